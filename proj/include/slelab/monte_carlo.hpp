#pragma once

// Monte-Carlo experiments confronting sampled curves and driving
// diffusions with the closed-form predictions in formulas.hpp.
//
// All experiments draw per-sample noise from Rng(master_seed, sample_index)
// and reduce in sample-index order, so results are reproducible and
// independent of any batching.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "slelab/estimate.hpp"
#include "slelab/formulas.hpp"
#include "slelab/loewner.hpp"
#include "slelab/rng.hpp"
#include "slelab/sampler.hpp"
#include "slelab/trace_evaluator.hpp"

namespace slelab {

// ---------------------------------------------------------------------------
// Left passage
// ---------------------------------------------------------------------------

/// Tracks w_t = g_t(z) - xi_t for a bulk point with steps adapted to the
/// current distance, dt = (eps |w|)^2 / (kappa + 4), so that both the
/// drift and the noise stay small relative to |w|.  The curve passes to
/// the left of z exactly when u/v -> +inf; we classify once |u/v| exceeds
/// q_cut, or by the sign of u if the point is swallowed first.
inline Estimate estimate_left_passage(double kappa, cplx z0, std::size_t n_samples,
                                      std::uint64_t master_seed, double q_cut = 1e3,
                                      double eps = 0.02, std::size_t max_steps = 4000000) {
    if (!(z0.imag() > 0.0)) throw std::domain_error("estimate_left_passage: Im z > 0 required");
    if (n_samples == 0) throw std::invalid_argument("estimate_left_passage: n_samples >= 1");
    double sk = std::sqrt(kappa);
    double r0_2 = std::norm(z0);
    double swallow2 = 1e-10 * r0_2;
    std::size_t left = 0, resolved = 0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        Rng rng(master_seed, i);
        double u = z0.real(), v = z0.imag();
        for (std::size_t k = 0; k < max_steps; ++k) {
            double r2 = u * u + v * v;
            if (r2 < swallow2) {
                ++resolved;
                if (u > 0.0) ++left;
                break;
            }
            if (std::abs(u) >= q_cut * v) {
                ++resolved;
                if (u > 0.0) ++left;
                break;
            }
            double dt = eps * eps * r2 / (kappa + 4.0);
            double db = std::sqrt(dt) * rng.gaussian();
            u += 2.0 * u / r2 * dt - sk * db;
            v += -2.0 * v / r2 * dt;
        }
    }
    Estimate e = bernoulli_estimate(left, resolved, n_samples);
    e.fingerprint = {kappa, 0.0, 0, n_samples, master_seed};
    return e;
}

// ---------------------------------------------------------------------------
// Crossing (which of two boundary points is swallowed first)
// ---------------------------------------------------------------------------

/// For kappa > 4 the curve eventually absorbs every boundary point.  With
/// marked points a < 0 < b, the event "b is absorbed before a" is the
/// chordal image of a crossing event with cross-ratio r = -a / (b - a).
/// Both images evolve under the same driving; per-step size adapts to the
/// closer of the two.  If both cross zero within one step the one that
/// started closer to the driving wins.
inline Estimate estimate_crossing(double kappa, double a, double b, std::size_t n_samples,
                                  std::uint64_t master_seed, double eps = 0.05,
                                  std::size_t max_steps = 4000000) {
    if (!(kappa > 4.0)) throw std::domain_error("estimate_crossing: kappa > 4 required");
    if (!(a < 0.0 && 0.0 < b)) throw std::domain_error("estimate_crossing: need a < 0 < b");
    double sk = std::sqrt(kappa);
    double scale = std::min(-a, b);
    double floor2 = 1e-18 * scale * scale;
    std::size_t b_first = 0, resolved = 0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        Rng rng(master_seed, i);
        double ya = a, yb = b;
        for (std::size_t k = 0; k < max_steps; ++k) {
            double m2 = std::min(ya * ya, yb * yb);
            if (m2 < floor2) {
                ++resolved;
                if (yb * yb < ya * ya) ++b_first;
                break;
            }
            double dt = eps * eps * m2 / (kappa + 4.0);
            double db = std::sqrt(dt) * rng.gaussian();
            double na = ya + 2.0 * dt / ya - sk * db;
            double nb = yb + 2.0 * dt / yb - sk * db;
            bool hit_a = na >= 0.0;  // ya < 0 throughout its lifetime
            bool hit_b = nb <= 0.0;
            if (hit_a || hit_b) {
                ++resolved;
                if (hit_b && (!hit_a || yb * yb < ya * ya)) ++b_first;
                break;
            }
            ya = na;
            yb = nb;
        }
    }
    Estimate e = bernoulli_estimate(b_first, resolved, n_samples);
    e.fingerprint = {kappa, 0.0, 0, n_samples, master_seed};
    return e;
}

/// Crossing experiment parametrized directly by the cross-ratio.
inline Estimate estimate_crossing_ratio(double kappa, double r, std::size_t n_samples,
                                        std::uint64_t master_seed, double eps = 0.05) {
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("estimate_crossing_ratio: 0 < r < 1");
    return estimate_crossing(kappa, -r, 1.0 - r, n_samples, master_seed, eps);
}

// ---------------------------------------------------------------------------
// Box-counting dimension
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t box_key(double x, double y, double inv_delta, double ox, double oy) {
    auto ix = static_cast<std::int64_t>(std::floor(x * inv_delta + ox));
    auto iy = static_cast<std::int64_t>(std::floor(y * inv_delta + oy));
    return (static_cast<std::uint64_t>(ix) << 32) ^
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy));
}

} // namespace detail

/// Number of grid boxes of side delta (grid shifted by fractional offsets
/// ox, oy in box units) met by the polyline through pts.  Segments longer
/// than delta/2 are subsampled so no visited box is skipped.
inline std::size_t box_count(const std::vector<cplx>& pts, double delta, double ox, double oy) {
    if (pts.empty()) return 0;
    double inv = 1.0 / delta;
    std::unordered_set<std::uint64_t> cells;
    cells.reserve(pts.size() / 4 + 16);
    cells.insert(detail::box_key(pts[0].real(), pts[0].imag(), inv, ox, oy));
    for (std::size_t i = 1; i < pts.size(); ++i) {
        cplx p = pts[i - 1], q = pts[i];
        double len = std::abs(q - p);
        int nsub = len > 0.5 * delta ? static_cast<int>(std::ceil(len * inv * 2.0)) : 1;
        for (int s = 1; s <= nsub; ++s) {
            double f = static_cast<double>(s) / nsub;
            cplx m = p + f * (q - p);
            cells.insert(detail::box_key(m.real(), m.imag(), inv, ox, oy));
        }
    }
    return cells.size();
}

struct DimensionEstimate {
    double dimension = 0.0;
    double std_error = 0.0;        // regression std error of the slope
    RegressionFit fit;             // log2 N vs log2 (1/delta)
    std::vector<double> deltas;
    std::vector<double> mean_counts;
    RunFingerprint fingerprint;
};

inline std::vector<double> default_box_deltas() {
    // Window chosen above the sampled curve's step-scale smoothness floor
    // and below the whole-trace diameter; finer scales only dilute the
    // slope with sub-resolution (dimension-one) curve pieces.
    return {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64};
}

/// Box-counting slope for a family of point sets produced by `generator`
/// (one call per sample index).  For every scale the count is averaged
/// over n_offsets random grid offsets and over all samples before fitting
/// log2 N against log2 (1/delta).
inline DimensionEstimate box_dimension(const std::function<std::vector<cplx>(std::size_t)>& generator,
                                       std::size_t n_sets, std::uint64_t master_seed,
                                       std::vector<double> deltas = default_box_deltas(),
                                       std::size_t n_offsets = 4) {
    if (n_sets == 0) throw std::invalid_argument("box_dimension: n_sets >= 1");
    // offsets are shared by all samples so per-scale means are comparable
    Rng orng(master_seed, 0xba5e0ff5e7ULL);
    std::vector<std::pair<double, double>> offs(n_offsets);
    for (auto& o : offs) o = {orng.uniform(), orng.uniform()};

    std::vector<double> totals(deltas.size(), 0.0);
    for (std::size_t i = 0; i < n_sets; ++i) {
        std::vector<cplx> pts = generator(i);
        for (std::size_t d = 0; d < deltas.size(); ++d)
            for (const auto& o : offs)
                totals[d] += static_cast<double>(box_count(pts, deltas[d], o.first, o.second));
    }
    std::vector<double> xs(deltas.size()), ys(deltas.size()), means(deltas.size());
    for (std::size_t d = 0; d < deltas.size(); ++d) {
        means[d] = totals[d] / (static_cast<double>(n_sets) * n_offsets);
        xs[d] = std::log2(1.0 / deltas[d]);
        ys[d] = std::log2(means[d]);
    }
    DimensionEstimate est;
    est.fit = linear_fit(xs, ys);
    est.dimension = est.fit.slope;
    est.std_error = est.fit.slope_std_error;
    est.deltas = std::move(deltas);
    est.mean_counts = std::move(means);
    est.fingerprint.n_samples = n_sets;
    est.fingerprint.master_seed = master_seed;
    return est;
}

/// Box-counting dimension of sampled traces at the given kappa.  Each
/// trace polyline is refined to half the finest box size before counting,
/// otherwise fast stretches of the curve are replaced by straight chords
/// and the fine-scale counts starve.
inline DimensionEstimate estimate_box_dimension(double kappa, std::size_t n_traces,
                                                std::size_t n_steps, std::uint64_t master_seed,
                                                std::vector<double> deltas = default_box_deltas()) {
    KappaContext ctx(kappa);
    double gap = 0.5 * *std::min_element(deltas.begin(), deltas.end());
    auto gen = [&](std::size_t i) {
        SamplerConfig cfg;
        cfg.n_steps = n_steps;
        cfg.master_seed = master_seed;
        cfg.sample_index = i;
        return compute_trace_refined(discretize(sample_driving(ctx, cfg)), gap);
    };
    DimensionEstimate est = box_dimension(gen, n_traces, master_seed, std::move(deltas));
    est.fingerprint = {kappa, 1.0, n_steps, n_traces, master_seed};
    return est;
}

// ---------------------------------------------------------------------------
// Boundary derivative moments
// ---------------------------------------------------------------------------

struct DerivativeScan {
    double x = 0.0;
    double h = 0.0;
    std::vector<double> times;       // snapshot ladder (ascending)
    std::vector<Estimate> mc;        // E[|w_t'(x)|^h 1{alive}] per time, target = closed form
    std::vector<double> analytic;    // derivative_expectation per time
    RegressionFit fit;               // log E vs log(|x| / sqrt(2 kappa t))
    double target_slope = 0.0;       // delta_h(kappa, h)
    std::vector<double> absorbed_fraction;  // per ladder time
    RunFingerprint fingerprint;
};

/// Moment scaling of the boundary derivative: one diffusion path per
/// sample with the moment snapshotted at each ladder time (absorbed paths
/// contribute 0 from their absorption time on).  The slope of log E
/// against log(|x|/sqrt(2 kappa t)) estimates delta_h, and each ladder
/// point is compared to the exact closed form, not just the asymptote.
inline DerivativeScan estimate_derivative_exponent(double kappa, double h, double x,
                                                   const std::vector<double>& times,
                                                   std::size_t n_steps, std::size_t n_samples,
                                                   std::uint64_t master_seed) {
    if (times.size() < 4) throw std::invalid_argument("estimate_derivative_exponent: need >= 4 times");
    KappaContext ctx(kappa);
    SamplerConfig cfg;
    cfg.total_time = times.back();
    cfg.n_steps = n_steps;
    cfg.master_seed = master_seed;
    double dt = cfg.total_time / static_cast<double>(n_steps);
    std::vector<std::size_t> snap_steps;
    for (double t : times) {
        auto s = static_cast<std::size_t>(std::llround(t / dt));
        if (s == 0 || s > n_steps || (!snap_steps.empty() && s <= snap_steps.back()))
            throw std::invalid_argument("estimate_derivative_exponent: times must be ascending and resolvable on the grid");
        snap_steps.push_back(s);
    }
    std::vector<std::vector<double>> vals(times.size());
    std::vector<std::size_t> dead(times.size(), 0);
    for (auto& v : vals) v.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        cfg.sample_index = i;
        auto snaps = evolve_boundary_snapshots(x, ctx, cfg, snap_steps);
        for (std::size_t j = 0; j < times.size(); ++j) {
            vals[j].push_back(snaps[j].alive ? std::exp(h * snaps[j].log_deriv) : 0.0);
            if (!snaps[j].alive) ++dead[j];
        }
    }
    DerivativeScan scan;
    scan.x = x;
    scan.h = h;
    scan.times = times;
    scan.target_slope = delta_h(kappa, h);
    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < times.size(); ++j) {
        Estimate e = mean_estimate(vals[j]);
        e.fingerprint = {kappa, times[j], n_steps, n_samples, master_seed};
        e.set_target(derivative_expectation(kappa, h, x, times[j]));
        scan.mc.push_back(e);
        scan.analytic.push_back(*e.target);
        scan.absorbed_fraction.push_back(static_cast<double>(dead[j]) / n_samples);
        if (e.value > 0.0) {
            lx.push_back(std::log(std::abs(x) / std::sqrt(2.0 * kappa * times[j])));
            ly.push_back(std::log(e.value));
        }
    }
    scan.fit = linear_fit(lx, ly);
    scan.fingerprint = {kappa, times.back(), n_steps, n_samples, master_seed};
    return scan;
}

// ---------------------------------------------------------------------------
// Restriction (slit avoidance at kappa = 8/3)
// ---------------------------------------------------------------------------

namespace detail {

inline double cross2(cplx o, cplx a, cplx b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

inline double point_segment_dist(cplx p, cplx a, cplx b) {
    cplx ab = b - a;
    double L2 = std::norm(ab);
    double t = L2 > 0.0 ? std::clamp(((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / L2, 0.0, 1.0)
                        : 0.0;
    return std::abs(p - (a + t * ab));
}

inline bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2) {
    double d1 = cross2(q1, q2, p1), d2 = cross2(q1, q2, p2);
    double d3 = cross2(p1, p2, q1), d4 = cross2(p1, p2, q2);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return true;
    // touching counts as a hit
    auto on = [](cplx a, cplx b, cplx p) {
        return cross2(a, b, p) == 0.0 &&
               std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
               std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
    };
    return on(q1, q2, p1) || on(q1, q2, p2) || on(p1, p2, q1) || on(p1, p2, q2);
}

} // namespace detail

struct RestrictionConfig {
    double x0 = 1.0;            // slit foot, != 0
    double height = 1.0;        // slit length l > 0
    double escape_radius = 0.0; // default 20 (|x0| + l)
    double resolution = 0.0;    // target piece size; default 0.02 min(|x0|, l)
    std::size_t n_samples = 5000;
    std::uint64_t master_seed = 0x5ce1ab5eedULL;
};

/// Fraction of kappa = 8/3 traces that leave the disc of radius R about
/// the origin without meeting the slit [x0, x0 + i l], for each escape
/// radius in the ascending ladder (the escape-at-infinity event is
/// approximated from below; sharing one trace per sample across the
/// ladder makes the estimates exactly nested, so the finite-R bias trend
/// is measured without MC noise on the differences).  Time steps are
/// uniform in sqrt(t) so trace pieces have roughly constant physical
/// size; a sample that neither hits nor escapes by the capacity-time
/// horizon is counted as unresolved.
inline std::vector<Estimate> estimate_restriction_ladder(const RestrictionConfig& rc,
                                                         std::vector<double> radii) {
    if (rc.x0 == 0.0) throw std::domain_error("estimate_restriction: x0 != 0 required");
    if (!(rc.height > 0.0)) throw std::domain_error("estimate_restriction: height > 0 required");
    if (radii.empty()) {
        radii.push_back(rc.escape_radius > 0.0 ? rc.escape_radius
                                               : 20.0 * (std::abs(rc.x0) + rc.height));
    }
    for (std::size_t j = 0; j < radii.size(); ++j)
        if (!(radii[j] > std::abs(rc.x0) + rc.height) || (j > 0 && radii[j] <= radii[j - 1]))
            throw std::invalid_argument("estimate_restriction: radii must ascend and clear the slit");
    double res = rc.resolution > 0.0 ? rc.resolution
                                     : 0.02 * std::min(std::abs(rc.x0), rc.height);
    double R_max = radii.back();
    double T = 2.0 * R_max * R_max;
    auto n = static_cast<std::size_t>(std::ceil(2.0 * std::sqrt(T) / res));
    KappaContext ctx(8.0 / 3.0);

    // grid t_k = (k/n)^2 T, shared by every sample
    std::vector<double> times(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        double f = static_cast<double>(k) / n;
        times[k] = f * f * T;
    }

    cplx s1(rc.x0, 0.0), s2(rc.x0, rc.height);
    double near_r = std::abs(rc.x0) + rc.height;

    std::vector<std::size_t> avoided(radii.size(), 0), resolved(radii.size(), 0);
    for (std::size_t i = 0; i < rc.n_samples; ++i) {
        SamplerConfig cfg;
        cfg.n_steps = n;
        cfg.master_seed = rc.master_seed;
        cfg.sample_index = i;
        std::vector<double> z = sample_normals(cfg);
        std::vector<double> xi(n + 1, 0.0);
        double sk = std::sqrt(ctx.kappa);
        for (std::size_t k = 0; k < n; ++k)
            xi[k + 1] = xi[k] + sk * std::sqrt(times[k + 1] - times[k]) * z[k];
        DrivingFunction drv{times, xi, Interpolation::PiecewiseConstantMidpoint};
        MapChain chain = discretize(drv);
        TraceEvaluator ev(chain);
        double tip = default_tip_eps(chain);
        // chords passing near the slit are refined down to fine_gap before
        // the intersection test; a residual proximity allowance of half the
        // floor catches excursions below it (cf. tip_eps design rule)
        double fine_gap = 0.05 * res;
        double hit_tol = 0.5 * fine_gap;

        bool hit = false;
        std::size_t next = 0;  // next radius not yet escaped
        cplx p(0.0, 0.0);
        for (std::size_t k = 0; k < chain.steps.size() && next < radii.size() && !hit; ++k) {
            cplx q = ev.trace_point_within(k, chain.steps[k].dt, tip);
            double gap = std::abs(q - p);
            if (std::abs(q) <= near_r + gap || std::abs(p) <= near_r + gap) {
                double d_pq = detail::segments_intersect(p, q, s1, s2)
                                  ? 0.0
                                  : std::min(std::min(detail::point_segment_dist(p, s1, s2),
                                                      detail::point_segment_dist(q, s1, s2)),
                                             std::min(detail::point_segment_dist(s1, p, q),
                                                      detail::point_segment_dist(s2, p, q)));
                if (d_pq <= hit_tol) {
                    hit = true;
                } else if (d_pq <= 2.0 * gap && gap > fine_gap) {
                    // in-step capacity bisection, walked in order
                    struct Span { double lo, hi; cplx p_hi; int depth; };
                    std::vector<Span> st;
                    st.push_back({0.0, chain.steps[k].dt, q, 0});
                    cplx sub_p = p;
                    while (!st.empty() && !hit) {
                        Span sp = st.back();
                        st.pop_back();
                        double g = std::abs(sp.p_hi - sub_p);
                        if (g <= fine_gap || sp.depth >= 40) {
                            if (detail::segments_intersect(sub_p, sp.p_hi, s1, s2) ||
                                detail::point_segment_dist(sub_p, s1, s2) <= hit_tol ||
                                detail::point_segment_dist(sp.p_hi, s1, s2) <= hit_tol)
                                hit = true;
                            sub_p = sp.p_hi;
                            continue;
                        }
                        double mid = 0.5 * (sp.lo + sp.hi);
                        cplx pm = ev.trace_point_within(k, mid, tip);
                        st.push_back({mid, sp.hi, sp.p_hi, sp.depth + 1});
                        st.push_back({sp.lo, mid, pm, sp.depth + 1});
                    }
                }
            }
            if (!hit) {
                double rq = std::abs(q);
                while (next < radii.size() && rq > radii[next]) {
                    ++avoided[next];
                    ++resolved[next];
                    ++next;
                }
            }
            p = q;
        }
        if (hit)
            for (std::size_t j = next; j < radii.size(); ++j) ++resolved[j];
        // neither hit nor escaped radii j >= next: unresolved for those
    }
    double target = restriction_prob_slit({rc.x0, rc.height});
    std::vector<Estimate> out;
    for (std::size_t j = 0; j < radii.size(); ++j) {
        Estimate e = bernoulli_estimate(avoided[j], resolved[j], rc.n_samples);
        e.set_target(target);
        e.fingerprint = {8.0 / 3.0, 2.0 * radii[j] * radii[j], n, rc.n_samples, rc.master_seed};
        out.push_back(e);
    }
    return out;
}

inline Estimate estimate_restriction(const RestrictionConfig& rc) {
    return estimate_restriction_ladder(rc, {}).front();
}

// ---------------------------------------------------------------------------
// Swallowing fraction
// ---------------------------------------------------------------------------

/// Exact probability that the boundary point x0 is absorbed by capacity
/// time T.  The image x_t = g_t(x0) - xi_t is a Bessel process of
/// dimension d = 1 + 4/kappa in the time scale s = kappa t; for kappa > 4
/// the dimension drops below 2 and the hitting time of 0 from x0 is
/// x0^2 / (2 G) in s-units with G ~ Gamma(nu), nu = (2 - d)/2.  For
/// kappa <= 4 the probability is 0.
inline double boundary_swallow_prob(double kappa, double x0, double total_time) {
    if (x0 == 0.0) throw std::domain_error("boundary_swallow_prob: x0 != 0 required");
    if (!(total_time > 0.0)) throw std::domain_error("boundary_swallow_prob: T > 0 required");
    if (kappa <= 4.0) return 0.0;
    double nu = 0.5 - 2.0 / kappa;
    double g = x0 * x0 / (2.0 * kappa * total_time);
    // regularized lower incomplete gamma P(nu, g) by series
    double term = std::pow(g, nu) * std::exp(-g) / (gamma_fn(nu) * nu);
    double sum = term;
    for (int k = 1; k < 10000; ++k) {
        term *= g / (nu + k);
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return 1.0 - sum;
}

/// Absorption probability of the boundary point x0 by capacity time T
/// (the kappa = 4 phase transition experiment: for kappa <= 4 the Bessel
/// dimension is >= 2 and the fraction vanishes; for kappa > 4 it follows
/// the hitting-time law in boundary_swallow_prob).
///
/// Plain Euler absorption detection at x = 0 misses sub-grid excursions
/// of the Bessel-type path and under-counts by O(dt^alpha) with alpha
/// well below 1/2, so the path is simulated only down to a barrier
/// b = 0.1 |x0| where the diffusion is regular; a per-substep Brownian
/// bridge test catches in-step dips below b, and a sample that reaches
/// the barrier is closed with the exact remaining-time hitting law from
/// its dip state (strong Markov property).  Above the barrier the drift
/// and noise caps of evolve_boundary_point apply unchanged, so the step
/// magnitudes stay small against x and the path cannot jump the barrier.
inline Estimate estimate_swallow_fraction(double kappa, double x0, double total_time,
                                          std::size_t n_samples, std::size_t n_steps,
                                          std::uint64_t master_seed) {
    if (x0 == 0.0) throw std::domain_error("estimate_swallow_fraction: x0 != 0 required");
    if (n_steps < 1) throw std::invalid_argument("estimate_swallow_fraction: n_steps >= 1");
    if (!(total_time > 0.0)) throw std::domain_error("estimate_swallow_fraction: T > 0 required");
    if (!(kappa > 0.0)) throw std::domain_error("estimate_swallow_fraction: kappa > 0 required");
    double dt = total_time / static_cast<double>(n_steps);
    double sk = std::sqrt(kappa);
    double b = 0.1 * std::abs(x0);
    double sgn = x0 > 0.0 ? 1.0 : -1.0;
    std::vector<double> vals;
    vals.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        Rng rng(master_seed, i);
        Rng bridge_rng(master_seed ^ 0xbadb1d6eULL, i);
        double x = std::abs(x0);  // the law is symmetric under x0 -> -x0
        double contrib = 0.0;
        double t = 0.0;
        bool done = false;
        for (std::size_t k = 0; k < n_steps && !done; ++k) {
            double db = sgn * std::sqrt(dt) * rng.gaussian();
            double noise = sk * std::abs(db);
            int m = 1;
            if (noise > 0.25 * x)
                m = static_cast<int>(std::min(1024.0, std::ceil(noise / (0.25 * x))));
            double local = dt / m;
            for (int sub = 0; sub < m; ++sub) {
                double drift = 2.0 * local / x;
                if (drift > 0.5 * x) drift = 0.5 * x;
                double x_new = x + drift - sk * db / m;
                double t_rem = total_time - (t + local * (sub + 1));
                if (x_new <= 0.0) {  // crossed the origin within one substep
                    contrib = 1.0;
                    done = true;
                    break;
                }
                if (x_new < b) {
                    contrib = kappa > 4.0 && t_rem > 0.0
                                  ? boundary_swallow_prob(kappa, x_new, t_rem)
                                  : 0.0;
                    done = true;
                    break;
                }
                // Brownian-bridge probability of an in-step dip below b.
                double p_dip = std::exp(-2.0 * (x - b) * (x_new - b) / (kappa * local));
                if (bridge_rng.uniform() < p_dip) {
                    contrib = kappa > 4.0 && t_rem > 0.0
                                  ? boundary_swallow_prob(kappa, b, t_rem)
                                  : 0.0;
                    done = true;
                    break;
                }
                x = x_new;
            }
            t += dt;
        }
        vals.push_back(contrib);
    }
    Estimate e = mean_estimate(vals);
    e.set_target(boundary_swallow_prob(kappa, x0, total_time));
    e.fingerprint = {kappa, total_time, n_steps, n_samples, master_seed};
    return e;
}

} // namespace slelab
