#pragma once

// Random SLE machinery: Brownian driving xi_t = sqrt(kappa) B_t, trace
// sampling, and the scalar diffusions the closed-form calculations
// reduce to (boundary point x_t with its log-derivative accumulator,
// bulk pair (u_t, v_t) with ratio q and distance integral D).

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "coulomb_gas.hpp"
#include "loewner.hpp"
#include "rng.hpp"
#include "trace_evaluator.hpp"

namespace slelab {

enum class SlePhase { Simple, Touching, SpaceFilling };

/// kappa with every derived constant the experiments compare against.
struct KappaContext {
    double kappa;
    CoulombConstants constants;
    double d_f;
    SlePhase phase;

    explicit KappaContext(double k)
        : kappa(k), constants(coulomb_constants(k)),
          d_f(std::min(1.0 + k / 8.0, 2.0)),
          phase(k <= 4.0 ? SlePhase::Simple
                         : (k < 8.0 ? SlePhase::Touching : SlePhase::SpaceFilling)) {
        if (!(k > 0.0)) throw std::domain_error("KappaContext: kappa > 0 required");
    }
};

struct SamplerConfig {
    double total_time = 1.0;
    std::size_t n_steps = 1000;
    std::uint64_t master_seed = 0x5ce1ab5eedULL;
    std::uint64_t sample_index = 0;

    void validate() const {
        if (!(total_time > 0.0)) throw std::invalid_argument("SamplerConfig: total_time > 0");
        if (n_steps < 1) throw std::invalid_argument("SamplerConfig: n_steps >= 1");
    }
};

/// The unit-normal increments a sample is built from; the driving path
/// and every coupled diffusion draw from this one sequence.
inline std::vector<double> sample_normals(const SamplerConfig& cfg) {
    Rng rng(cfg.master_seed, cfg.sample_index);
    std::vector<double> z(cfg.n_steps);
    for (double& v : z) v = rng.gaussian();
    return z;
}

/// xi(t_i) = sqrt(kappa) B(t_i) on the uniform grid.
inline DrivingFunction sample_driving(const KappaContext& ctx, const SamplerConfig& cfg) {
    cfg.validate();
    std::vector<double> z = sample_normals(cfg);
    double dt = cfg.total_time / cfg.n_steps;
    double amp = std::sqrt(ctx.kappa * dt);
    DrivingFunction d;
    d.times.resize(cfg.n_steps + 1);
    d.values.resize(cfg.n_steps + 1);
    d.times[0] = 0.0;
    d.values[0] = 0.0;
    for (std::size_t i = 0; i < cfg.n_steps; ++i) {
        d.times[i + 1] = dt * (i + 1);
        d.values[i + 1] = d.values[i] + amp * z[i];
    }
    return d;
}

inline Trace sample_trace(const KappaContext& ctx, const SamplerConfig& cfg,
                          double tip_eps = 0.0, std::size_t stride = 1) {
    MapChain chain = discretize(sample_driving(ctx, cfg));
    return compute_trace(chain, tip_eps, stride);
}

struct BoundaryDiffusionState {
    double x = 0.0;          // image of the boundary point under w_t
    double log_deriv = 0.0;  // accumulated log |w_t'(x0)|, monotone decreasing
    bool alive = true;
    double absorb_time = 0.0;
};

inline double boundary_absorb_eps(double kappa, double dt) {
    return 1e-4 * std::sqrt(kappa) * std::sqrt(dt);
}

/// dx = (2/x) dt - sqrt(kappa) dB, Euler-Maruyama on the shared
/// increments. The drift step is capped at |x|/2 so it cannot overshoot
/// the singularity; absorption fires when |x| < absorb_eps or when the
/// path jumps across zero within one step (only possible, in the
/// continuum, by hitting it).
inline BoundaryDiffusionState evolve_boundary_point(double x0, const KappaContext& ctx,
                                                    const SamplerConfig& cfg) {
    if (x0 == 0.0) throw std::domain_error("evolve_boundary_point: x0 != 0 required");
    cfg.validate();
    std::vector<double> z = sample_normals(cfg);
    double dt = cfg.total_time / cfg.n_steps;
    double sk = std::sqrt(ctx.kappa);
    double eps = boundary_absorb_eps(ctx.kappa, dt);
    BoundaryDiffusionState st;
    st.x = x0;
    double t = 0.0;
    for (std::size_t i = 0; i < cfg.n_steps; ++i) {
        // Substep so the per-substep noise stays small against |x|;
        // otherwise a kappa <= 4 path can jump over the singularity it
        // would never hit in the continuum. The Brownian increment of
        // the macro step is interpolated linearly across substeps, so
        // the shared-noise contract with sample_driving is preserved.
        double db_total = std::sqrt(dt) * z[i];
        double noise_mag = sk * std::abs(db_total);
        int m = 1;
        if (noise_mag > 0.25 * std::abs(st.x))
            m = static_cast<int>(std::min(1024.0, std::ceil(noise_mag / (0.25 * std::abs(st.x)))));
        double local = dt / m;
        for (int sub = 0; sub < m; ++sub) {
            st.log_deriv += -2.0 * local / (st.x * st.x);
            double drift = 2.0 * local / st.x;
            if (std::abs(drift) > 0.5 * std::abs(st.x))
                drift = std::copysign(0.5 * std::abs(st.x), drift);
            double x_new = st.x + drift - sk * db_total / m;
            if (std::abs(x_new) < eps || x_new * st.x < 0.0) {
                st.alive = false;
                st.absorb_time = t + local * (sub + 1);
                st.x = 0.0;
                return st;
            }
            st.x = x_new;
        }
        t += dt;
    }
    return st;
}

/// Same diffusion as evolve_boundary_point but records the state after
/// each step index listed in at_steps (strictly increasing, <= n_steps).
/// Once absorbed, every later snapshot repeats the absorbed state.
inline std::vector<BoundaryDiffusionState> evolve_boundary_snapshots(
    double x0, const KappaContext& ctx, const SamplerConfig& cfg,
    const std::vector<std::size_t>& at_steps) {
    if (x0 == 0.0) throw std::domain_error("evolve_boundary_snapshots: x0 != 0 required");
    cfg.validate();
    for (std::size_t j = 0; j < at_steps.size(); ++j)
        if (at_steps[j] == 0 || at_steps[j] > cfg.n_steps ||
            (j > 0 && at_steps[j] <= at_steps[j - 1]))
            throw std::invalid_argument("evolve_boundary_snapshots: bad snapshot steps");
    std::vector<double> z = sample_normals(cfg);
    double dt = cfg.total_time / cfg.n_steps;
    double sk = std::sqrt(ctx.kappa);
    double eps = boundary_absorb_eps(ctx.kappa, dt);
    BoundaryDiffusionState st;
    st.x = x0;
    std::vector<BoundaryDiffusionState> out;
    out.reserve(at_steps.size());
    std::size_t next = 0;
    double t = 0.0;
    for (std::size_t i = 0; i < cfg.n_steps && next < at_steps.size(); ++i) {
        if (st.alive) {
            double db_total = std::sqrt(dt) * z[i];
            double noise_mag = sk * std::abs(db_total);
            int m = 1;
            if (noise_mag > 0.25 * std::abs(st.x))
                m = static_cast<int>(std::min(1024.0, std::ceil(noise_mag / (0.25 * std::abs(st.x)))));
            double local = dt / m;
            for (int sub = 0; sub < m; ++sub) {
                st.log_deriv += -2.0 * local / (st.x * st.x);
                double drift = 2.0 * local / st.x;
                if (std::abs(drift) > 0.5 * std::abs(st.x))
                    drift = std::copysign(0.5 * std::abs(st.x), drift);
                double x_new = st.x + drift - sk * db_total / m;
                if (std::abs(x_new) < eps || x_new * st.x < 0.0) {
                    st.alive = false;
                    st.absorb_time = t + local * (sub + 1);
                    st.x = 0.0;
                    break;
                }
                st.x = x_new;
            }
        }
        t += dt;
        if (i + 1 == at_steps[next]) {
            out.push_back(st);
            ++next;
        }
    }
    while (out.size() < at_steps.size()) out.push_back(st);
    return out;
}

struct BulkDiffusionState {
    double u = 0.0;
    double v = 0.0;
    double q = 0.0;          // u / v
    double D = 0.0;          // int 4 v^2 / (u^2 + v^2)^2 dt
    bool alive = true;
    double swallow_time = 0.0;
};

/// Coupled Euler-Maruyama for (u, v) = (Re w_t, Im w_t) with shared
/// noise: du = 2u/(u^2+v^2) dt - sqrt(kappa) dB, dv = -2v/(u^2+v^2) dt.
/// Swallowing is declared when one step would collapse v.
inline BulkDiffusionState evolve_bulk_point(cplx z0, const KappaContext& ctx,
                                            const SamplerConfig& cfg) {
    if (!(z0.imag() > 0.0)) throw std::domain_error("evolve_bulk_point: Im z0 > 0 required");
    cfg.validate();
    std::vector<double> z = sample_normals(cfg);
    double dt = cfg.total_time / cfg.n_steps;
    double sk = std::sqrt(ctx.kappa);
    BulkDiffusionState st;
    st.u = z0.real();
    st.v = z0.imag();
    st.q = st.u / st.v;
    double t = 0.0;
    for (std::size_t i = 0; i < cfg.n_steps; ++i) {
        double r2 = st.u * st.u + st.v * st.v;
        if (2.0 * dt >= r2) {  // v would collapse within this step
            st.alive = false;
            st.swallow_time = t;
            return st;
        }
        st.D += 4.0 * st.v * st.v / (r2 * r2) * dt;
        double du = 2.0 * st.u / r2 * dt - sk * std::sqrt(dt) * z[i];
        double dv = -2.0 * st.v / r2 * dt;
        st.u += du;
        st.v += dv;
        st.q = st.u / st.v;
        t += dt;
    }
    return st;
}

} // namespace slelab
