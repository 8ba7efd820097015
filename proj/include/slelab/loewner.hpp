#pragma once

// Deterministic Loewner-evolution engine. A driving function is
// discretized into a chain of elementary vertical-slit maps; the chain
// supports forward point evolution (with swallowing detection), inverse
// evaluation, trace reconstruction and capacity estimation.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace slelab {

using cplx = std::complex<double>;

/// Square root branch mapping into the closed upper half plane.
/// Exactly real results resolve toward Im = +0.
inline cplx sqrt_uhp(cplx z) {
    cplx s = std::sqrt(z);
    if (s.imag() < 0.0) s = -s;
    return s;
}

/// dg(w) = xi + sqrt((w - xi)^2 + 4 dt): removes the vertical segment
/// [xi, xi + 2i sqrt(dt)] from the upper half plane.
inline cplx elementary_slit_map(cplx w, double xi, double dt) {
    if (dt == 0.0) return w;
    cplx u = w - xi;
    return xi + sqrt_uhp(u * u + 4.0 * dt);
}

/// Exact inverse of elementary_slit_map on its image.
inline cplx inverse_slit_map(cplx w, double xi, double dt) {
    if (dt == 0.0) return w;
    cplx u = w - xi;
    return xi + sqrt_uhp(u * u - 4.0 * dt);
}

enum class Interpolation { PiecewiseConstantMidpoint, Linear };

/// A sampled driving function xi(t) on a capacity-time grid.
struct DrivingFunction {
    std::vector<double> times;   // strictly increasing, times[0] = 0
    std::vector<double> values;  // xi(times[i])
    Interpolation interp = Interpolation::PiecewiseConstantMidpoint;

    void validate() const {
        if (times.size() != values.size() || times.size() < 2)
            throw std::invalid_argument("DrivingFunction: need matching grids with >= 2 samples");
        if (times.front() != 0.0)
            throw std::invalid_argument("DrivingFunction: grid must start at t = 0");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (!(times[i] > times[i - 1]))
                throw std::invalid_argument("DrivingFunction: times must be strictly increasing");
        for (double v : values)
            if (!std::isfinite(v))
                throw std::invalid_argument("DrivingFunction: values must be finite");
    }
};

/// g_T as an ordered composition of elementary slit-map steps.
struct MapChain {
    struct Step {
        double dt;
        double xi;
    };
    std::vector<Step> steps;

    double total_capacity_time() const {
        double t = 0.0;
        for (const Step& s : steps) t += s.dt;
        return t;
    }

    /// Forward map g_T(z), ignoring swallowing.
    cplx apply(cplx z) const {
        for (const Step& s : steps) z = elementary_slit_map(z, s.xi, s.dt);
        return z;
    }
};

/// One step per grid interval; midpoint driving value by default
/// (within a step the map is the exact slit map at the midpoint value).
inline MapChain discretize(const DrivingFunction& driving) {
    driving.validate();
    MapChain chain;
    chain.steps.reserve(driving.times.size() - 1);
    for (std::size_t i = 0; i + 1 < driving.times.size(); ++i) {
        double dt = driving.times[i + 1] - driving.times[i];
        double xi;
        if (driving.interp == Interpolation::PiecewiseConstantMidpoint)
            xi = 0.5 * (driving.values[i] + driving.values[i + 1]);
        else
            xi = driving.values[i];
        chain.steps.push_back({dt, xi});
    }
    return chain;
}

struct PointFate {
    bool alive;
    cplx image;            // final image w_T if alive
    double swallow_time;   // first time the swallowing test fired, else 0
};

inline constexpr double kSwallowEps = 1e-6;

/// Evolve z through the chain; swallowing is declared at the first step
/// where |w - xi|^2 <= eps^2 dt (regularized continuum condition
/// g_t(z) - xi_t -> 0).
inline PointFate evolve_point(cplx z, const MapChain& chain, double swallow_eps = kSwallowEps) {
    double t = 0.0;
    cplx w = z;
    for (const MapChain::Step& s : chain.steps) {
        cplx u = w - s.xi;
        if (std::norm(u) <= swallow_eps * swallow_eps * s.dt)
            return {false, w, t};
        w = s.xi + sqrt_uhp(u * u + 4.0 * s.dt);
        t += s.dt;
    }
    return {true, w, 0.0};
}

/// gamma(t_k) ~ (f_1^-1 o ... o f_k^-1)(xi_k + i tip_eps).
/// Exact inverse composition; O(k) per call.
inline cplx trace_point(const MapChain& chain, std::size_t upto_step, double tip_eps) {
    if (upto_step > chain.steps.size())
        throw std::out_of_range("trace_point: step index beyond chain");
    double xi_top = upto_step == 0 ? 0.0 : chain.steps[upto_step - 1].xi;
    cplx w(xi_top, tip_eps);
    if (upto_step == 0) return cplx(0.0, tip_eps);
    for (std::size_t j = upto_step; j-- > 0;)
        w = inverse_slit_map(w, chain.steps[j].xi, chain.steps[j].dt);
    return w;
}

inline double default_tip_eps(const MapChain& chain) {
    return 1e-6 * std::sqrt(chain.total_capacity_time());
}

/// Estimate the leading Laurent coefficient a1 of g(z) = z + a1/z + ...
/// by averaging (g(z) - z) z over probe points on a large semicircle.
/// Must equal twice the total capacity time up to O(1/probe_radius).
inline double capacity_check(const MapChain& chain, double probe_radius) {
    const int n_probe = 8;
    double acc = 0.0;
    for (int j = 0; j < n_probe; ++j) {
        double theta = M_PI * (j + 0.5) / n_probe;
        cplx z = probe_radius * cplx(std::cos(theta), std::sin(theta));
        acc += ((chain.apply(z) - z) * z).real();
    }
    return acc / n_probe;
}

struct Trace {
    std::vector<double> times;
    std::vector<cplx> points;
};

/// CSV export, header `t,re,im`, 17 significant digits.
inline void write_trace_csv(const Trace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "t,re,im\n";
    char buf[128];
    for (std::size_t i = 0; i < trace.points.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", trace.times[i],
                      trace.points[i].real(), trace.points[i].imag());
        out << buf;
    }
}

inline void write_driving_csv(const DrivingFunction& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "t,xi\n";
    char buf[96];
    for (std::size_t i = 0; i < d.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", d.times[i], d.values[i]);
        out << buf;
    }
}

} // namespace slelab
