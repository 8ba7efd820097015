#pragma once

// Fast trace reconstruction. Pulling the tip back through all k inverse
// slit maps costs O(k) per trace point and O(N^2) per trace. Here
// consecutive steps are grouped into aligned blocks (sizes b0 * 4^l);
// each block's composed inverse map is fitted far from the block's hull
// by a short Laurent tail  w + sum_n c_n / (w - center)^n,  so a pullback
// applies whole blocks once the point is far enough from their driving
// range. Fit residuals are measured on held-out probes and converted
// into a per-block validity radius, so accuracy is controlled, not
// assumed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "loewner.hpp"

namespace slelab {

class TraceEvaluator {
public:
    static constexpr int kBaseBlock = 4;
    static constexpr int kLevelRatio = 4;
    static constexpr int kOrder = 6;

    explicit TraceEvaluator(const MapChain& chain, double block_tol = 1e-7)
        : tol_(block_tol) {
        n_ = chain.steps.size();
        xi_.resize(n_);
        dt_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            xi_[i] = chain.steps[i].xi;
            dt_[i] = chain.steps[i].dt;
        }
        build_levels();
    }

    std::size_t size() const { return n_; }
    double xi_at(std::size_t i) const { return xi_[i]; }

    struct PullbackStats {
        std::size_t singles = 0;
        std::size_t block_apps = 0;
    };

    /// gamma(t_k): pull xi_k + i tip_eps back through steps k-1 .. 0.
    cplx trace_point(std::size_t upto_step, double tip_eps,
                     PullbackStats* stats = nullptr) const {
        if (upto_step == 0) return cplx(0.0, tip_eps);
        return pullback(cplx(xi_[upto_step - 1], tip_eps), upto_step, stats);
    }

    /// gamma at capacity time t_k + s, 0 < s <= dt_k: the tip of the
    /// partially grown slit of step k, pulled back through steps k-1 .. 0.
    cplx trace_point_within(std::size_t step, double s, double tip_eps,
                            PullbackStats* stats = nullptr) const {
        cplx w(xi_[step], std::sqrt(4.0 * s + tip_eps * tip_eps));
        return pullback(w, step, stats);
    }

    /// Applies the inverse maps of steps j-1 .. 0 to w.
    cplx pullback(cplx w, std::size_t j, PullbackStats* stats = nullptr) const {
        while (j > 0) {
            bool advanced = false;
            for (int lev = static_cast<int>(levels_.size()) - 1; lev >= 0; --lev) {
                const Level& L = levels_[lev];
                if (j < L.len || j % L.len != 0) continue;
                const Block& b = L.blocks[j / L.len - 1];
                cplx d = w - b.center;
                double r2 = std::norm(d);
                if (r2 <= b.valid_radius * b.valid_radius) continue;
                // Horner in 1/d.
                cplx inv = 1.0 / d;
                cplx acc = b.coef[kOrder - 1];
                for (int q = kOrder - 2; q >= 0; --q) acc = acc * inv + b.coef[q];
                w += acc * inv;
                j -= L.len;
                advanced = true;
                if (stats) ++stats->block_apps;
                break;
            }
            if (!advanced) {
                --j;
                w = inverse_slit_map(w, xi_[j], dt_[j]);
                if (stats) ++stats->singles;
            }
        }
        return w;
    }

private:
    struct Block {
        cplx center;
        cplx coef[kOrder];     // c_1 .. c_kOrder
        double valid_radius;
    };
    struct Level {
        std::size_t len;
        std::vector<Block> blocks;
    };

    void build_levels() {
        std::size_t len = kBaseBlock;
        while (n_ / len >= 2) {
            Level L;
            L.len = len;
            std::size_t nb = n_ / len;
            L.blocks.resize(nb);
            for (std::size_t bi = 0; bi < nb; ++bi)
                fit_block(L.blocks[bi], bi * len, len);
            levels_.push_back(std::move(L));
            len *= kLevelRatio;
        }
    }

    // Exact inverse composition of steps [first, first+len) in pullback
    // order (newest step undone first).
    cplx block_inverse(cplx w, std::size_t first, std::size_t len) const {
        for (std::size_t j = first + len; j-- > first;)
            w = inverse_slit_map(w, xi_[j], dt_[j]);
        return w;
    }

    void fit_block(Block& b, std::size_t first, std::size_t len) {
        double xi_lo = xi_[first], xi_hi = xi_[first];
        double cap = 0.0;
        for (std::size_t j = first; j < first + len; ++j) {
            xi_lo = std::min(xi_lo, xi_[j]);
            xi_hi = std::max(xi_hi, xi_[j]);
            cap += dt_[j];
        }
        b.center = cplx(0.5 * (xi_lo + xi_hi), 0.0);
        double scale = 0.5 * (xi_hi - xi_lo) + 2.0 * std::sqrt(cap);
        double rho = 1.5 * scale;

        // Fit c_n on probe semicircle, normal equations in 1/d powers.
        constexpr int n_probe = 16;
        cplx A[kOrder][kOrder] = {};
        cplx rhs[kOrder] = {};
        cplx probe_d[n_probe], probe_val[n_probe];
        for (int p = 0; p < n_probe; ++p) {
            double th = M_PI * (p + 0.5) / n_probe;
            cplx d = rho * cplx(std::cos(th), std::sin(th));
            cplx w = b.center + d;
            probe_d[p] = d;
            probe_val[p] = block_inverse(w, first, len) - w;
        }
        for (int p = 0; p < n_probe; ++p) {
            cplx inv = 1.0 / probe_d[p];
            cplx basis[kOrder];
            cplx pw = inv;
            for (int q = 0; q < kOrder; ++q) {
                basis[q] = pw;
                pw *= inv;
            }
            for (int q = 0; q < kOrder; ++q) {
                for (int r = 0; r < kOrder; ++r)
                    A[q][r] += std::conj(basis[q]) * basis[r];
                rhs[q] += std::conj(basis[q]) * probe_val[p];
            }
        }
        solve_normal(A, rhs, b.coef);

        // Held-out residual at a slightly larger radius.
        double err = 0.0;
        for (int p = 0; p < 6; ++p) {
            double th = M_PI * (p + 0.37) / 6;
            cplx d = 1.15 * rho * cplx(std::cos(th), std::sin(th));
            cplx w = b.center + d;
            cplx inv = 1.0 / d;
            cplx acc = b.coef[kOrder - 1];
            for (int q = kOrder - 2; q >= 0; --q) acc = acc * inv + b.coef[q];
            err = std::max(err, std::abs(block_inverse(w, first, len) - w - acc * inv));
        }
        // Residual of an order-kOrder fit decays like (rho/r)^(kOrder+1).
        double r_ok = 1.15 * rho;
        if (err > tol_) r_ok *= std::pow(err / tol_, 1.0 / (kOrder + 1));
        b.valid_radius = r_ok;
    }

    static void solve_normal(cplx A[kOrder][kOrder], cplx rhs[kOrder], cplx out[kOrder]) {
        constexpr int n = kOrder;
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int r = col + 1; r < n; ++r)
                if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
            for (int c = 0; c < n; ++c) std::swap(A[col][c], A[piv][c]);
            std::swap(rhs[col], rhs[piv]);
            for (int r = col + 1; r < n; ++r) {
                cplx f = A[r][col] / A[col][col];
                for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
                rhs[r] -= f * rhs[col];
            }
        }
        for (int r = n - 1; r >= 0; --r) {
            cplx s = rhs[r];
            for (int c = r + 1; c < n; ++c) s -= A[r][c] * out[c];
            out[r] = s / A[r][r];
        }
    }

    std::size_t n_;
    std::vector<double> xi_, dt_;
    std::vector<Level> levels_;
    double tol_;
};

/// Trace polyline refined until consecutive points are closer than
/// max_gap (capacity-time bisection within steps, depth-limited).  The
/// uniform capacity grid badly undersamples stretches where the tip moves
/// fast, which box counting and intersection tests care about.
inline std::vector<cplx> compute_trace_refined(const MapChain& chain, double max_gap,
                                               double tip_eps = 0.0) {
    if (tip_eps <= 0.0) tip_eps = default_tip_eps(chain);
    if (!(max_gap > 0.0)) throw std::invalid_argument("compute_trace_refined: max_gap > 0");
    TraceEvaluator ev(chain);
    std::vector<cplx> pts;
    pts.reserve(chain.steps.size() + 16);
    pts.emplace_back(0.0, 0.0);
    constexpr int kMaxDepth = 50;
    struct Span {
        double s_lo, s_hi;
        cplx p_hi;
        int depth;
    };
    std::vector<Span> stack;
    for (std::size_t k = 0; k < chain.steps.size(); ++k) {
        double dt = chain.steps[k].dt;
        cplx p_lo = pts.back();
        stack.clear();
        stack.push_back({0.0, dt, ev.trace_point_within(k, dt, tip_eps), 0});
        while (!stack.empty()) {
            Span sp = stack.back();
            stack.pop_back();
            if (std::abs(sp.p_hi - p_lo) <= max_gap || sp.depth >= kMaxDepth) {
                pts.push_back(sp.p_hi);
                p_lo = sp.p_hi;
                continue;
            }
            double s_mid = 0.5 * (sp.s_lo + sp.s_hi);
            if (!(s_mid > sp.s_lo && s_mid < sp.s_hi)) {  // double precision floor
                pts.push_back(sp.p_hi);
                p_lo = sp.p_hi;
                continue;
            }
            cplx p_mid = ev.trace_point_within(k, s_mid, tip_eps);
            stack.push_back({s_mid, sp.s_hi, sp.p_hi, sp.depth + 1});
            stack.push_back({sp.s_lo, s_mid, p_mid, sp.depth + 1});
        }
    }
    return pts;
}

/// Full trace via the accelerated evaluator, sampled every `stride` steps.
inline Trace compute_trace(const MapChain& chain, double tip_eps = 0.0, std::size_t stride = 1) {
    if (tip_eps <= 0.0) tip_eps = default_tip_eps(chain);
    TraceEvaluator ev(chain);
    Trace tr;
    double t = 0.0;
    tr.times.push_back(0.0);
    tr.points.push_back(cplx(0.0, 0.0));
    std::vector<double> tcum(chain.steps.size());
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
        t += chain.steps[i].dt;
        tcum[i] = t;
    }
    for (std::size_t k = stride; k <= chain.steps.size(); k += stride) {
        cplx g = ev.trace_point(k, tip_eps);
        if (g.imag() < 0.0) g = cplx(g.real(), 0.0);
        tr.times.push_back(tcum[k - 1]);
        tr.points.push_back(g);
    }
    return tr;
}

} // namespace slelab
