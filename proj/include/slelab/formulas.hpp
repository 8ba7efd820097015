#pragma once

// Closed-form probabilities and exponents: Schramm's left-passage
// formula, Cardy's crossing formula with the rectangle -> cross-ratio
// elliptic reduction, fractal dimension, the boundary derivative
// expectation, the kappa = 8/3 restriction probability for a vertical
// slit hull, and a generic escape-probability solver for 1D diffusions.

#include <cmath>
#include <functional>
#include <stdexcept>

#include "coulomb_gas.hpp"
#include "special_functions.hpp"

namespace slelab {

/// P[gamma passes to the left of z = x + iy], 0 < kappa < 8.
inline double left_passage_prob(double kappa, double x, double y) {
    if (!(kappa > 0.0 && kappa < 8.0))
        throw std::domain_error("left_passage_prob: 0 < kappa < 8 required");
    if (!(y > 0.0)) throw std::domain_error("left_passage_prob: y > 0 required");
    double k4 = 4.0 / kappa;
    double pref = gamma_fn(k4) / (std::sqrt(M_PI) * gamma_fn(k4 - 0.5));
    double q = x / y;
    return 0.5 + pref * q * hyp2f1(0.5, k4, 1.5, -q * q);
}

/// Cardy's crossing probability at cross-ratio r in (0,1), 4 < kappa < 8.
inline double cardy_crossing(double kappa, double r) {
    if (!(kappa > 4.0 && kappa < 8.0))
        throw std::domain_error("cardy_crossing: 4 < kappa < 8 required");
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("cardy_crossing: r in (0,1) required");
    double k4 = 4.0 / kappa;
    double pref = gamma_fn(2.0 - 2.0 * k4) / (gamma_fn(2.0 - k4) * gamma_fn(1.0 - k4));
    return pref * std::pow(r, 1.0 - k4) * hyp2f1(k4, 1.0 - k4, 2.0 - k4, r);
}

struct RectangleGeometry {
    double aspect;       // L'/L
    double modulus;      // elliptic modulus k with K'(k)/(2K(k)) = aspect
    double cross_ratio;  // r = ((1-k)/(1+k))^2
};

/// Solve K'(k)/(2K(k)) = aspect by bisection (the map is a monotone
/// bijection (0,1) -> (0,inf)).
inline RectangleGeometry rectangle_to_r(double aspect) {
    if (!(aspect > 0.0)) throw std::domain_error("rectangle_to_r: aspect > 0 required");
    double lo = 1e-15, hi = 1.0 - 1e-15;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double f = elliptic_Kprime(mid) / (2.0 * elliptic_K(mid));
        // K'/2K decreases in k.
        if (f > aspect) lo = mid; else hi = mid;
        if (hi - lo < 1e-16) break;
    }
    double k = 0.5 * (lo + hi);
    RectangleGeometry geo;
    geo.aspect = aspect;
    geo.modulus = k;
    geo.cross_ratio = std::pow((1.0 - k) / (1.0 + k), 2);
    return geo;
}

/// d_f(kappa) = min(1 + kappa/8, 2).
inline double fractal_dimension(double kappa) {
    if (!(kappa > 0.0)) throw std::domain_error("fractal_dimension: kappa > 0 required");
    return std::min(1.0 + kappa / 8.0, 2.0);
}

/// E[|w_t'(x)|^h] closed form for a boundary point x at time t.
inline double derivative_expectation(double kappa, double h, double x, double t) {
    if (x == 0.0) throw std::domain_error("derivative_expectation: x != 0 required");
    if (!(t > 0.0)) throw std::domain_error("derivative_expectation: t > 0 required");
    double d = delta_h(kappa, h);
    double a = 2.0 / kappa + 0.5 + 0.5 * d;
    double c = 2.0 / kappa + 0.5 + d;
    double y = x * x / (2.0 * kappa * t);
    return gamma_fn(a) / gamma_fn(c) * std::pow(std::abs(x) / std::sqrt(2.0 * kappa * t), d) *
           std::exp(-y) * hyp1f1(a, c, y);
}

struct SlitHull {
    double base;    // x0 != 0
    double height;  // l > 0
};

/// P[gamma avoids the slit [x0, x0 + i l]] = Phi_A'(0)^(5/8) for
/// kappa = 8/3, with Phi_A(z) = sqrt((z-x0)^2 + l^2) - sqrt(x0^2 + l^2).
inline double restriction_prob_slit(const SlitHull& hull) {
    if (hull.base == 0.0)
        throw std::domain_error("restriction_prob_slit: hull touches the origin");
    if (hull.height < 0.0)
        throw std::domain_error("restriction_prob_slit: height >= 0 required");
    double phi_prime = std::abs(hull.base) /
                       std::sqrt(hull.base * hull.base + hull.height * hull.height);
    return std::pow(phi_prime, 5.0 / 8.0);
}

namespace detail {

// Adaptive Simpson for smooth integrands.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb))
        throw std::runtime_error("quadrature: non-finite integrand");
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

// int_lo^hi f'(s) ds where log f'(s) = -int_x^s w(r) dr and w may have
// integrable singularities at `sing_lo` / `sing_hi` (the interval
// endpoints of the diffusion). Tanh-sinh nodes cluster doubly
// exponentially at both ends of [lo, hi]; the inner integral of w is
// accumulated incrementally between consecutive nodes, which keeps each
// sub-integral mild even when w ~ 1/(s - a).
inline double zero_mode_mass(const std::function<double(double)>& w, double x, double lo,
                             double hi) {
    constexpr double h = 1.0 / 64.0;
    constexpr double u_max = 5.0;
    const int n_side = static_cast<int>(u_max / h);
    const double span = hi - lo;

    struct Node {
        double s;
        double weight;
    };
    std::vector<Node> nodes;
    nodes.reserve(2 * n_side + 1);
    for (int j = -n_side; j <= n_side; ++j) {
        double u = j * h;
        double wexp = 0.5 * M_PI * std::sinh(u);
        if (std::abs(wexp) > 350.0) continue;  // weight underflows
        double from_lo = span / (1.0 + std::exp(-2.0 * wexp));
        double weight = h * 0.5 * M_PI * std::cosh(u) * span /
                        (2.0 * std::pow(std::cosh(wexp), 2));
        nodes.push_back({lo + from_lo, weight});
    }
    // Accumulate log f' along the ascending node sequence starting from
    // the node nearest to x (or from x itself if inside [lo, hi]).
    double total = 0.0;
    double anchor = std::min(std::max(x, nodes.front().s), nodes.back().s);
    // Ascend from anchor.
    double logf = 0.0, prev = anchor;
    if (anchor > x) logf = -integrate(w, x, anchor);
    double logf_anchor = logf;
    for (const Node& nd : nodes) {
        if (nd.s <= anchor) continue;
        logf -= integrate(w, prev, nd.s);
        prev = nd.s;
        if (logf < 700.0) total += nd.weight * std::exp(logf);
    }
    // Descend from anchor.
    logf = logf_anchor;
    prev = anchor;
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
        if (it->s > anchor) continue;
        logf += integrate(w, it->s, prev);
        prev = it->s;
        if (logf < 700.0) total += it->weight * std::exp(logf);
    }
    if (!std::isfinite(total))
        throw std::runtime_error("escape_probability: zero mode mass diverged");
    return total;
}

} // namespace detail

/// Generic escape probability P_a for the diffusion with drift u(x) and
/// squared diffusion coefficient v2(x) > 0 on (a, b), started at x:
/// builds the zero mode f with f'(s) = exp(-int 2u/v2) by quadrature and
/// returns (f(x) - f(b)) / (f(a) - f(b)). Integrable singularities of
/// the drift at the endpoints are absorbed by tanh-sinh node placement.
inline double escape_probability(const std::function<double(double)>& drift,
                                 const std::function<double(double)>& diffusion_sq,
                                 double a, double b, double x) {
    if (!(a < x && x < b)) throw std::domain_error("escape_probability: need a < x < b");
    auto w = [&](double s) { return 2.0 * drift(s) / diffusion_sq(s); };
    double upper = detail::zero_mode_mass(w, x, x, b);  // f(b) - f(x)
    double lower = detail::zero_mode_mass(w, x, a, x);  // f(x) - f(a)
    return upper / (upper + lower);  // (f(b) - f(x)) / (f(b) - f(a))
}

} // namespace slelab
