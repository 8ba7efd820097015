#pragma once

// Monte-Carlo result containers: point estimates with standard errors
// and comparison metadata, and log-log regression fits for exponent
// extraction.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slelab {

struct RunFingerprint {
    double kappa = 0.0;
    double total_time = 0.0;
    std::size_t n_steps = 0;
    std::size_t n_samples = 0;
    std::uint64_t master_seed = 0;
};

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    std::optional<double> target;
    std::optional<double> z_score;
    double unresolved_fraction = 0.0;
    bool warning = false;  // set when unresolved fraction exceeds 5%
    RunFingerprint fingerprint;

    void set_target(double t) {
        target = t;
        z_score = std_error > 0.0 ? (value - t) / std_error
                                  : (value == t ? 0.0 : INFINITY);
    }
};

/// Bernoulli estimate from k successes out of n resolved samples,
/// std_error = sqrt(p (1-p) / n).
inline Estimate bernoulli_estimate(std::size_t successes, std::size_t resolved,
                                   std::size_t attempted) {
    if (resolved == 0) throw std::runtime_error("bernoulli_estimate: no resolved samples");
    Estimate e;
    double p = static_cast<double>(successes) / resolved;
    e.value = p;
    e.std_error = std::sqrt(p * (1.0 - p) / resolved);
    e.n_samples = resolved;
    e.unresolved_fraction =
        static_cast<double>(attempted - resolved) / static_cast<double>(attempted);
    e.warning = e.unresolved_fraction > 0.05;
    return e;
}

/// Mean estimate with std_error = sample std / sqrt(n).
inline Estimate mean_estimate(const std::vector<double>& samples) {
    if (samples.empty()) throw std::runtime_error("mean_estimate: no samples");
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= samples.size();
    double var = 0.0;
    for (double v : samples) var += (v - mean) * (v - mean);
    var /= samples.size() > 1 ? samples.size() - 1 : 1;
    Estimate e;
    e.value = mean;
    e.std_error = std::sqrt(var / samples.size());
    e.n_samples = samples.size();
    return e;
}

struct RegressionFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_std_error = 0.0;
    double r_squared = 0.0;
    double abscissa_min = 0.0;
    double abscissa_max = 0.0;
    std::vector<double> xs, ys;  // the fitted points, for reports/plots
};

/// Ordinary least squares y = slope x + intercept.
inline RegressionFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 4)
        throw std::invalid_argument("linear_fit: need >= 4 matched points");
    const std::size_t n = xs.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    RegressionFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.slope_std_error = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
    fit.abscissa_min = *std::min_element(xs.begin(), xs.end());
    fit.abscissa_max = *std::max_element(xs.begin(), xs.end());
    fit.xs = xs;
    fit.ys = ys;
    return fit;
}

} // namespace slelab
