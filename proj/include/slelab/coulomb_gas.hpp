#pragma once

// Coulomb-gas / CFT dictionary: couplings, charges, Kac weights,
// central charge, duality and the multifractal exponent family.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace slelab {

struct CoulombConstants {
    double kappa;
    double g;             // 4/kappa
    double n;             // -2 cos(pi g)
    double q;             // 2 + 2 cos(2 pi g); meaningful for 4 <= kappa <= 8
    bool q_in_validity;   // paper restricts q to 4 <= kappa <= 8
    double radius;        // compactification radius sqrt(8/kappa)
    double alpha0;        // background charge
    double alpha_plus;    // sqrt(kappa)/2
    double alpha_minus;   // -2/sqrt(kappa)
    double c;             // central charge
};

inline double central_charge(double kappa) {
    return (8.0 - 3.0 * kappa) * (kappa - 6.0) / (2.0 * kappa);
}

inline CoulombConstants coulomb_constants(double kappa) {
    if (!(kappa > 0.0)) throw std::domain_error("coulomb_constants: kappa > 0 required");
    CoulombConstants k;
    k.kappa = kappa;
    k.g = 4.0 / kappa;
    k.n = -2.0 * std::cos(M_PI * k.g);
    k.q = 2.0 + 2.0 * std::cos(2.0 * M_PI * k.g);
    k.q_in_validity = kappa >= 4.0 && kappa <= 8.0;
    k.radius = std::sqrt(8.0 / kappa);
    k.alpha_plus = std::sqrt(kappa) / 2.0;
    k.alpha_minus = -2.0 / std::sqrt(kappa);
    k.alpha0 = 0.5 * (k.alpha_plus + k.alpha_minus);
    k.c = central_charge(kappa);
    return k;
}

/// Returns (c(kappa), kappa' = 16/kappa); c is invariant under the dual.
inline std::pair<double, double> central_charge_dual(double kappa) {
    if (!(kappa > 0.0)) throw std::domain_error("central_charge_dual: kappa > 0 required");
    return {central_charge(kappa), 16.0 / kappa};
}

struct KacLabel {
    double r;
    double s;
};

struct KacWeight {
    double h;      // h_{r,s}
    double alpha;  // alpha_{r,s}
};

/// h_{r,s} = ((r kappa - 4 s)^2 - (kappa - 4)^2) / (16 kappa) and the
/// corresponding charge alpha_{r,s} = (1-r) alpha_+/2 + (1-s) alpha_-/2.
inline KacWeight kac_weight(KacLabel label, double kappa) {
    if (!(kappa > 0.0)) throw std::domain_error("kac_weight: kappa > 0 required");
    double rk = label.r * kappa - 4.0 * label.s;
    double km4 = kappa - 4.0;
    KacWeight w;
    w.h = (rk * rk - km4 * km4) / (16.0 * kappa);
    double ap = std::sqrt(kappa) / 2.0, am = -2.0 / std::sqrt(kappa);
    w.alpha = 0.5 * (1.0 - label.r) * ap + 0.5 * (1.0 - label.s) * am;
    return w;
}

/// Canonical charge branch alpha_h = alpha0 - sqrt(alpha0^2 + h),
/// normalized so Delta(0) = 0.
inline double alpha_h(double h, double kappa) {
    double a0 = coulomb_constants(kappa).alpha0;
    double disc = a0 * a0 + h;
    if (disc < 0.0) throw std::domain_error("alpha_h: alpha0^2 + h < 0");
    // Plus root: vanishes at h = 0 when alpha0 < 0 (kappa < 4) and matches
    // the indicial branch of delta_h, so n Delta(h) = 2 alpha_{1,n+1} alpha_h.
    return a0 + std::sqrt(disc);
}

/// Delta(h) = (kappa - 4 + sqrt((kappa-4)^2 + 16 kappa h)) / (2 kappa);
/// the indicial root vanishing at h = 0.
inline double delta_h(double kappa, double h) {
    if (!(kappa > 0.0)) throw std::domain_error("delta_h: kappa > 0 required");
    double km4 = kappa - 4.0;
    double disc = km4 * km4 + 16.0 * kappa * h;
    if (disc < 0.0) throw std::domain_error("delta_h: negative discriminant");
    return (km4 + std::sqrt(disc)) / (2.0 * kappa);
}

struct CurveOperatorDims {
    double h_boundary;   // h_{1,n+1}
    double h_bulk;       // h_{0,n/2}
    double m_boundary;   // n / sqrt(kappa)
    double m_bulk;       // n / (2 sqrt(kappa))
};

inline CurveOperatorDims curve_operator_dims(int n_curves, double kappa) {
    if (n_curves < 1) throw std::domain_error("curve_operator_dims: n >= 1 required");
    if (!(kappa > 0.0)) throw std::domain_error("curve_operator_dims: kappa > 0 required");
    double n = n_curves;
    CurveOperatorDims d;
    d.h_boundary = (2.0 * n * n + n * (4.0 - kappa)) / (2.0 * kappa);
    d.h_bulk = (4.0 * n * n - (kappa - 4.0) * (kappa - 4.0)) / (16.0 * kappa);
    d.m_boundary = n / std::sqrt(kappa);
    d.m_bulk = n / (2.0 * std::sqrt(kappa));
    return d;
}

/// Delta^(n)(h) = n Delta(h). Computed both directly and in charge form
/// 2 alpha_{1,n+1} alpha_h; the two routes must agree.
inline double boundary_exponent(int n_curves, double h, double kappa) {
    double direct = n_curves * delta_h(kappa, h);
    double charge_form =
        2.0 * kac_weight({1.0, static_cast<double>(n_curves) + 1.0}, kappa).alpha * alpha_h(h, kappa);
    if (std::abs(direct - charge_form) > 1e-10 * (1.0 + std::abs(direct)))
        throw std::runtime_error("boundary_exponent: charge-form disagreement");
    return direct;
}

/// Delta^(n)_bulk(h) = -h/2 + (1/16 + (n-1)/(4 kappa)) *
///                     (kappa - 4 + sqrt((kappa-4)^2 + 16 kappa h)).
inline double bulk_exponent(int n_curves, double h, double kappa) {
    if (!(kappa > 0.0)) throw std::domain_error("bulk_exponent: kappa > 0 required");
    double km4 = kappa - 4.0;
    double disc = km4 * km4 + 16.0 * kappa * h;
    if (disc < 0.0) throw std::domain_error("bulk_exponent: negative discriminant");
    double coef = 1.0 / 16.0 + (n_curves - 1.0) / (4.0 * kappa);
    return -0.5 * h + coef * (km4 + std::sqrt(disc));
}

/// Higher boundary exponent for n curves and n+1 probe weights:
/// sum Delta^(n)(h_i) + (kappa/2) sum_{i<j} Delta(h_i) Delta(h_j).
inline double higher_boundary_exponent(int n_curves, const std::vector<double>& h_list,
                                       double kappa) {
    if (h_list.size() != static_cast<std::size_t>(n_curves) + 1)
        throw std::invalid_argument("higher_boundary_exponent: need n+1 weights");
    double sum = 0.0, cross = 0.0;
    std::vector<double> d(h_list.size());
    for (std::size_t i = 0; i < h_list.size(); ++i) {
        d[i] = delta_h(kappa, h_list[i]);
        sum += boundary_exponent(n_curves, h_list[i], kappa);
    }
    for (std::size_t i = 0; i < h_list.size(); ++i)
        for (std::size_t j = i + 1; j < h_list.size(); ++j) cross += d[i] * d[j];
    return sum + 0.5 * kappa * cross;
}

/// Higher bulk exponent for n curves and n probe weights:
/// sum Delta^(n)_bulk(h_i) + (kappa/4) sum_{i<j} Delta(h_i) Delta(h_j).
inline double higher_bulk_exponent(int n_curves, const std::vector<double>& h_list,
                                   double kappa) {
    if (h_list.size() != static_cast<std::size_t>(n_curves))
        throw std::invalid_argument("higher_bulk_exponent: need n weights");
    double sum = 0.0, cross = 0.0;
    std::vector<double> d(h_list.size());
    for (std::size_t i = 0; i < h_list.size(); ++i) {
        d[i] = delta_h(kappa, h_list[i]);
        sum += bulk_exponent(n_curves, h_list[i], kappa);
    }
    for (std::size_t i = 0; i < h_list.size(); ++i)
        for (std::size_t j = i + 1; j < h_list.size(); ++j) cross += d[i] * d[j];
    return sum + 0.25 * kappa * cross;
}

} // namespace slelab
