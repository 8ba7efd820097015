#pragma once

// Self-contained numeric kernel: Gamma, Pochhammer, Gauss and confluent
// hypergeometric series, complete elliptic integrals via AGM, Jacobi sn
// via descending Landen transformation.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace slelab {

struct SeriesControl {
    double rel_tol = 1e-15;
    int max_terms = 10000;
};

class series_error : public std::runtime_error {
public:
    series_error(const std::string& what, double partial)
        : std::runtime_error(what), partial_sum(partial) {}
    double partial_sum;
};

inline bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

/// Gamma function. Poles at 0, -1, -2, ... are rejected.
inline double gamma_fn(double x) {
    if (!std::isfinite(x) || is_nonpositive_integer(x))
        throw std::domain_error("gamma: pole at non-positive integer " + std::to_string(x));
    return std::tgamma(x);
}

/// (a)_m = a (a+1) ... (a+m-1), with (a)_0 = 1.
inline double pochhammer(double a, int m) {
    double p = 1.0;
    for (int i = 0; i < m; ++i) p *= a + i;
    return p;
}

namespace detail {

// Plain Gauss series; converges for |x| < 1.
inline double hyp2f1_series(double a, double b, double c, double x, const SeriesControl& ctl) {
    double term = 1.0, sum = 1.0;
    for (int m = 0; m < ctl.max_terms; ++m) {
        term *= (a + m) * (b + m) / ((c + m) * (m + 1)) * x;
        sum += term;
        if (std::abs(term) <= ctl.rel_tol * std::abs(sum)) return sum;
    }
    throw series_error("hyp2f1: no convergence within max_terms", sum);
}

} // namespace detail

/// Gauss hypergeometric 2F1(a,b;c;x) for x < 1.
/// Direct series for -0.5 <= x < 1; Pfaff transformation x -> x/(x-1)
/// for x < -0.5 (covers arbitrarily large negative arguments).
inline double hyp2f1(double a, double b, double c, double x, const SeriesControl& ctl = {}) {
    if (is_nonpositive_integer(c))
        throw std::domain_error("hyp2f1: c is a non-positive integer");
    if (x >= 1.0)
        throw std::domain_error("hyp2f1: argument must satisfy x < 1");
    if (x < -0.5) {
        // 2F1(a,b;c;x) = (1-x)^(-a) 2F1(a, c-b; c; x/(x-1))
        double y = x / (x - 1.0);  // in (1/3, 1)
        return std::pow(1.0 - x, -a) * detail::hyp2f1_series(a, c - b, c, y, ctl);
    }
    return detail::hyp2f1_series(a, b, c, x, ctl);
}

/// Kummer's confluent hypergeometric Phi(a,c;y) = 1F1(a;c;y).
/// For y < 0 the Kummer transformation keeps the series sign-definite.
inline double hyp1f1(double a, double c, double y, const SeriesControl& ctl = {}) {
    if (is_nonpositive_integer(c))
        throw std::domain_error("hyp1f1: c is a non-positive integer");
    if (y < 0.0) return std::exp(y) * hyp1f1(c - a, c, -y, ctl);
    double term = 1.0, sum = 1.0;
    for (int m = 0; m < ctl.max_terms; ++m) {
        term *= (a + m) / ((c + m) * (m + 1)) * y;
        sum += term;
        if (std::abs(term) <= ctl.rel_tol * std::abs(sum)) return sum;
    }
    throw series_error("hyp1f1: no convergence within max_terms", sum);
}

/// Complete elliptic integral of the first kind, arithmetic-geometric mean.
inline double elliptic_K(double k) {
    if (!(k >= 0.0 && k < 1.0))
        throw std::domain_error("elliptic_K: modulus must be in [0,1)");
    double a = 1.0, b = std::sqrt(1.0 - k * k);
    // The AGM gains quadratically, so ~6 iterations reach machine
    // precision; the cap guards against |a - b| stalling at a few ulps.
    for (int it = 0; it < 64 && std::abs(a - b) > 2e-16 * a; ++it) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return M_PI / (2.0 * a);
}

inline double elliptic_Kprime(double k) {
    if (!(k >= 0.0 && k < 1.0))
        throw std::domain_error("elliptic_Kprime: modulus must be in [0,1)");
    return elliptic_K(std::sqrt((1.0 - k) * (1.0 + k)));
}

/// Jacobi sn(z,k) by descending Landen transformation to the
/// trigonometric limit. Valid for complex z away from the poles of sn.
inline std::complex<double> jacobi_sn(std::complex<double> z, double k) {
    if (!(k >= 0.0 && k < 1.0))
        throw std::domain_error("jacobi_sn: modulus must be in [0,1)");
    // k_{n+1} = k_n^2 / (1 + k_n')^2 descends quadratically to 0.
    double kseq[32];
    int n = 0;
    double kn = k;
    while (kn > 1e-16 && n < 32) {
        kseq[n++] = kn;
        double kp = std::sqrt((1.0 - kn) * (1.0 + kn));
        kn = kn * kn / ((1.0 + kp) * (1.0 + kp));
    }
    // Argument scale factor: z_{n+1} = z_n / (1 + k_{n+1}).
    std::complex<double> w = z;
    double kd[32];
    for (int i = 0; i < n; ++i) {
        double kp = std::sqrt((1.0 - kseq[i]) * (1.0 + kseq[i]));
        kd[i] = kseq[i] * kseq[i] / ((1.0 + kp) * (1.0 + kp));
        w /= 1.0 + kd[i];
    }
    std::complex<double> s = std::sin(w);  // sn(w, 0)
    // Ascend: sn(z, k_n) = (1 + k_{n+1}) s / (1 + k_{n+1} s^2).
    for (int i = n - 1; i >= 0; --i) {
        std::complex<double> denom = 1.0 + kd[i] * s * s;
        if (std::abs(denom) < 1e-300)
            throw std::domain_error("jacobi_sn: evaluation at a pole");
        s = (1.0 + kd[i]) * s / denom;
    }
    return s;
}

} // namespace slelab
