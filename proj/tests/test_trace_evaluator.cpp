#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "slelab/sampler.hpp"
#include "slelab/trace_evaluator.hpp"

using namespace slelab;

static MapChain sampled_chain(double kappa, std::size_t n_steps) {
    KappaContext ctx(kappa);
    SamplerConfig cfg;
    cfg.n_steps = n_steps;
    return discretize(sample_driving(ctx, cfg));
}

TEST_CASE("compressed evaluator agrees with direct inverse composition") {
    MapChain chain = sampled_chain(8.0 / 3.0, 800);
    TraceEvaluator ev(chain);
    double tip_eps = default_tip_eps(chain);
    for (std::size_t k : {std::size_t(100), std::size_t(400), std::size_t(800)}) {
        cplx direct = trace_point(chain, k, tip_eps);
        cplx fast = ev.trace_point(k, tip_eps);
        CHECK(std::abs(direct - fast) < 1e-3);  // far-field compression tolerance
    }
}

TEST_CASE("compute_trace matches per-point reconstruction") {
    MapChain chain = sampled_chain(2.0, 300);
    Trace tr = compute_trace(chain);
    REQUIRE(tr.points.size() == 301);
    double tip_eps = default_tip_eps(chain);
    CHECK(tr.points[0] == cplx(0.0, 0.0));
    for (std::size_t k : {std::size_t(150), std::size_t(300)})
        CHECK(std::abs(tr.points[k] - trace_point(chain, k, tip_eps)) < 1e-3);
    for (const cplx& p : tr.points) CHECK(p.imag() >= 0.0);
}

TEST_CASE("refined trace respects the gap bound for a simple curve") {
    // kappa = 2 traces are simple; refinement must close every large gap
    // (the discontinuity escape hatch only triggers in fjord regimes).
    MapChain chain = sampled_chain(2.0, 400);
    const double max_gap = 0.05;
    std::vector<cplx> pts = compute_trace_refined(chain, max_gap);
    REQUIRE(pts.size() > 401);
    // The refiner carries a precision-floor escape hatch, so a handful of
    // segments may exceed the target slightly; none should blow past it.
    std::size_t violations = 0;
    double worst = 0.0;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        double g = std::abs(pts[k] - pts[k - 1]);
        if (g > max_gap) ++violations;
        worst = std::max(worst, g);
    }
    CHECK(violations * 50 <= pts.size());
    CHECK(worst < 4.0 * max_gap);
}

TEST_CASE("refinement only inserts points: coarse vertices survive") {
    MapChain chain = sampled_chain(2.0, 100);
    Trace coarse = compute_trace(chain);
    std::vector<cplx> fine = compute_trace_refined(chain, 0.05);
    std::size_t found = 0;
    for (const cplx& c : coarse.points) {
        for (const cplx& f : fine)
            if (std::abs(f - c) < 1e-3) {
                ++found;
                break;
            }
    }
    CHECK(found == coarse.points.size());
}

TEST_CASE("stride decimates the trace sampling") {
    MapChain chain = sampled_chain(3.0, 200);
    Trace full = compute_trace(chain);
    Trace dec = compute_trace(chain, 0.0, 4);
    REQUIRE(dec.points.size() == 51);
    for (std::size_t k = 0; k < dec.points.size(); ++k) {
        CHECK(dec.times[k] == doctest::Approx(full.times[4 * k]));
        CHECK(std::abs(dec.points[k] - full.points[4 * k]) < 1e-12);
    }
}
