#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "slelab/sampler.hpp"

using namespace slelab;

TEST_CASE("kappa context: phases and derived constants") {
    CHECK_THROWS(KappaContext(0.0));
    CHECK_THROWS(KappaContext(-1.0));
    CHECK(KappaContext(2.0).phase == SlePhase::Simple);
    CHECK(KappaContext(6.0).phase == SlePhase::Touching);
    CHECK(KappaContext(9.0).phase == SlePhase::SpaceFilling);
    CHECK(KappaContext(6.0).d_f == doctest::Approx(1.75));
}

TEST_CASE("config validation") {
    SamplerConfig cfg;
    cfg.n_steps = 0;
    CHECK_THROWS(cfg.validate());
    cfg = {};
    cfg.total_time = -1.0;
    CHECK_THROWS(cfg.validate());
}

TEST_CASE("driving samples are reproducible and seed-sensitive") {
    KappaContext ctx(8.0 / 3.0);
    SamplerConfig cfg;
    cfg.n_steps = 64;
    DrivingFunction a = sample_driving(ctx, cfg);
    DrivingFunction b = sample_driving(ctx, cfg);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t k = 0; k < a.values.size(); ++k) CHECK(a.values[k] == b.values[k]);
    cfg.sample_index = 1;
    DrivingFunction c = sample_driving(ctx, cfg);
    CHECK(a.values.back() != c.values.back());
}

TEST_CASE("same noise drives every kappa: values scale by sqrt(kappa)") {
    SamplerConfig cfg;
    cfg.n_steps = 32;
    DrivingFunction d2 = sample_driving(KappaContext(2.0), cfg);
    DrivingFunction d8 = sample_driving(KappaContext(8.0), cfg);
    for (std::size_t k = 0; k < d2.values.size(); ++k)
        CHECK(d8.values[k] == doctest::Approx(2.0 * d2.values[k]).epsilon(1e-12));
}

TEST_CASE("driving endpoint variance matches kappa T") {
    const double kappa = 4.0;
    const std::size_t n = 4000;
    KappaContext ctx(kappa);
    SamplerConfig cfg;
    cfg.n_steps = 16;
    double s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cfg.sample_index = i;
        double v = sample_driving(ctx, cfg).values.back();
        s2 += v * v;
    }
    s2 /= n;
    // chi^2 fluctuation: std error of s2 is kappa T sqrt(2/n) ~ 0.09
    CHECK(s2 == doctest::Approx(kappa * cfg.total_time).epsilon(0.12));
}

TEST_CASE("boundary snapshots agree with a single evolution") {
    KappaContext ctx(6.0);
    SamplerConfig cfg;
    cfg.n_steps = 256;
    std::vector<std::size_t> at = {64, 128, 256};
    auto snaps = evolve_boundary_snapshots(1.0, ctx, cfg, at);
    REQUIRE(snaps.size() == at.size());
    // The last snapshot must coincide with evolving straight to the end.
    BoundaryDiffusionState full = evolve_boundary_point(1.0, ctx, cfg);
    CHECK(snaps.back().alive == full.alive);
    if (full.alive) {
        CHECK(snaps.back().x == doctest::Approx(full.x).epsilon(1e-12));
        CHECK(snaps.back().log_deriv == doctest::Approx(full.log_deriv).epsilon(1e-10));
    }
}

TEST_CASE("kappa = 2 boundary point survives, kappa = 6 often dies") {
    SamplerConfig cfg;
    cfg.n_steps = 20000;
    cfg.total_time = 50.0;
    std::size_t dead2 = 0, dead6 = 0;
    for (std::size_t i = 0; i < 50; ++i) {
        cfg.sample_index = i;
        if (!evolve_boundary_point(0.5, KappaContext(2.0), cfg).alive) ++dead2;
        if (!evolve_boundary_point(0.5, KappaContext(6.0), cfg).alive) ++dead6;
    }
    CHECK(dead2 <= 2);
    CHECK(dead6 >= 18);
}

TEST_CASE("sampled trace stays in the closed upper half plane") {
    KappaContext ctx(3.0);
    SamplerConfig cfg;
    cfg.n_steps = 400;
    Trace tr = sample_trace(ctx, cfg);
    REQUIRE(tr.points.size() == cfg.n_steps + 1);
    for (const cplx& p : tr.points) CHECK(p.imag() >= 0.0);
}
