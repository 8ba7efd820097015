#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "slelab/exact_solutions.hpp"
#include "slelab/loewner.hpp"

using namespace slelab;

TEST_CASE("vertical slit closed form") {
    // g_t(z) = c + sqrt((z - c)^2 + 4t)
    CHECK(std::abs(vertical_slit(cplx(0.0, 3.0), 0.0, 1.0) - cplx(0.0, std::sqrt(5.0))) < 1e-15);
    CHECK(std::abs(vertical_slit(cplx(1.0, 2.0), 1.0, 0.25) - cplx(1.0, std::sqrt(3.0))) < 1e-15);
    // t = 0 is the identity
    CHECK(std::abs(vertical_slit(cplx(0.7, 1.3), 0.0, 0.0) - cplx(0.7, 1.3)) < 1e-15);
}

TEST_CASE("arc map is the identity at t = 0 and respects capacity") {
    ArcSpec spec(1.5);
    CHECK(spec.max_time() == doctest::Approx(1.125));
    cplx z(0.4, 2.0);
    CHECK(std::abs(arc_map(z, spec, 0.0) - z) < 1e-12);
    // Hydrodynamic normalization: far field g(z) ~ z + 2t/z.
    double t = 0.5;
    cplx far(0.0, 1e5);
    cplx g = arc_map(far, spec, t);
    CHECK(std::abs((g - far) * far - cplx(2.0 * t, 0.0)) < 1e-3);
}

TEST_CASE("sampled arc driving brackets the analytic driving") {
    ArcSpec spec(1.0);
    DrivingFunction d = arc_driving_sampled(spec, 0.3, 300);
    d.validate();
    for (std::size_t k = 0; k <= 300; k += 50)
        CHECK(d.values[k] == doctest::Approx(arc_driving(d.times[k], spec)).epsilon(1e-12));
}

TEST_CASE("arc interior points approach -2r near the swallowing time") {
    ArcSpec spec(1.0);
    double t = spec.max_time() - 1e-10;
    for (cplx z : {cplx(0.0, 0.5), cplx(-0.3, 0.4)})
        CHECK(std::abs(arc_map(z, spec, t) - cplx(-2.0, 0.0)) < 1e-4);
}

TEST_CASE("swallowing example driving is continuous and vanishes beyond t = 1") {
    CHECK(swallowing_example_driving(1.5) == 0.0);
    CHECK(swallowing_example_driving(1.0) == 0.0);
    CHECK_THROWS(swallowing_example_driving(-0.5));
    CHECK(swallowing_example_driving(1.0 - 1e-12) == doctest::Approx(0.0).epsilon(1e-5));
    CHECK(swallowing_example_driving(0.5) == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("swallowing example: interior points die together near t = 1") {
    // The hull closes at t = 1; points inside the enclosed pocket are
    // swallowed at times clustering there.  Locate the pocket from the
    // (coarse) trace barycenter rather than hard-coding geometry.
    const std::size_t n = 6000;
    MapChain chain = discretize(swallowing_example_sampled(1.2, n));
    std::size_t k1 = static_cast<std::size_t>(n / 1.2);  // step index of t = 1
    cplx mid = trace_point(chain, k1 / 2, 1e-4);
    cplx probe(mid.real(), 0.5 * mid.imag());
    PointFate f = evolve_point(probe, chain, 1.0);  // step-scale detection
    REQUIRE(!f.alive);
    CHECK(f.swallow_time == doctest::Approx(1.0).epsilon(0.01));
    // A far-away point survives the whole evolution.
    CHECK(evolve_point(cplx(10.0, 10.0), chain, 1.0).alive);
}
