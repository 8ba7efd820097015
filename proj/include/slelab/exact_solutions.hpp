#pragma once

// Closed-form Loewner solutions used as ground truth for the engine:
// constant driving (vertical slit), the growing circular arc, and the
// finite-time swallowing example.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "loewner.hpp"

namespace slelab {

/// g_t(z) = c + sqrt((z-c)^2 + 4t) for constant driving xi = c.
inline cplx vertical_slit(cplx z, double c, double t) {
    return elementary_slit_map(z, c, t);
}

struct ArcSpec {
    double r;
    ArcSpec(double radius) : r(radius) {
        if (!(radius > 0.0)) throw std::invalid_argument("ArcSpec: r > 0 required");
    }
    double max_time() const { return 0.5 * r * r; }
};

/// xi_t = 3 sqrt(r^2 - 2t) - 2r on [0, r^2/2].
inline double arc_driving(double t, const ArcSpec& spec) {
    double s = spec.r * spec.r - 2.0 * t;
    if (s < -1e-12 * spec.r * spec.r)
        throw std::domain_error("arc_driving: t beyond r^2/2");
    return 3.0 * std::sqrt(std::max(s, 0.0)) - 2.0 * spec.r;
}

/// Closed-form map removing the circular arc of radius r at capacity
/// time t:
///   g_t(z) = [(z-r)^2 + 2z s + (z+r) sqrt((z+r)^2 - 4 z s)] / (2z),
/// s = sqrt(r^2 - 2t). The inner square root branch is resolved by
/// continuation in t from the t = 0 identity, where it equals z - r.
inline cplx arc_map(cplx z, const ArcSpec& spec, double t) {
    if (z == cplx(0.0, 0.0)) throw std::domain_error("arc_map: z = 0 singular");
    if (!(t >= 0.0 && t < spec.max_time() * (1.0 + 1e-15)))
        throw std::domain_error("arc_map: t outside [0, r^2/2)");
    const double r = spec.r;
    const int n_cont = 512;
    cplx branch = z - r;  // value of sqrt((z+r)^2 - 4 z s) at s = r
    for (int i = 1; i <= n_cont; ++i) {
        double ti = t * i / n_cont;
        double s = std::sqrt(std::max(r * r - 2.0 * ti, 0.0));
        cplx rad = (z + r) * (z + r) - 4.0 * z * s;
        cplx root = std::sqrt(rad);
        branch = (std::norm(root - branch) <= std::norm(-root - branch)) ? root : -root;
    }
    double s = std::sqrt(std::max(r * r - 2.0 * t, 0.0));
    return ((z - r) * (z - r) + 2.0 * z * s + (z + r) * branch) / (2.0 * z);
}

/// Sampled arc driving on a uniform grid up to t_end < r^2/2.
inline DrivingFunction arc_driving_sampled(const ArcSpec& spec, double t_end, std::size_t n_steps) {
    DrivingFunction d;
    d.times.resize(n_steps + 1);
    d.values.resize(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i) {
        double t = t_end * static_cast<double>(i) / n_steps;
        d.times[i] = t;
        d.values[i] = arc_driving(t, spec);
    }
    return d;
}

/// xi_t = 2 sqrt(6 (1 - t)) for t in (0,1), zero elsewhere. The hull
/// pinches onto the real axis at t = 1, swallowing a bounded region.
inline double swallowing_example_driving(double t) {
    if (t < 0.0) throw std::domain_error("swallowing_example_driving: t >= 0 required");
    if (t >= 1.0) return 0.0;
    return 2.0 * std::sqrt(6.0 * (1.0 - t));
}

inline DrivingFunction swallowing_example_sampled(double t_end, std::size_t n_steps) {
    DrivingFunction d;
    d.times.resize(n_steps + 1);
    d.values.resize(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i) {
        double t = t_end * static_cast<double>(i) / n_steps;
        d.times[i] = t;
        d.values[i] = swallowing_example_driving(t);
    }
    return d;
}

} // namespace slelab
