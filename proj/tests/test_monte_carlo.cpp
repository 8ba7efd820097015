#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "slelab/monte_carlo.hpp"

using namespace slelab;

static constexpr std::uint64_t kSeed = 0x5ce1ab5eedULL;

TEST_CASE("estimate containers") {
    Estimate e = bernoulli_estimate(25, 100, 110);
    CHECK(e.value == doctest::Approx(0.25));
    CHECK(e.std_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 100)));
    CHECK(e.unresolved_fraction == doctest::Approx(10.0 / 110.0));
    CHECK(e.warning);
    e.set_target(0.25);
    CHECK(*e.z_score == doctest::Approx(0.0));
    CHECK_THROWS(bernoulli_estimate(0, 0, 5));

    Estimate m = mean_estimate({1.0, 2.0, 3.0, 4.0});
    CHECK(m.value == doctest::Approx(2.5));
    CHECK(m.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
}

TEST_CASE("linear fit recovers an exact line") {
    std::vector<double> xs = {1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(3.0 - 2.0 * x);
    RegressionFit f = linear_fit(xs, ys);
    CHECK(f.slope == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(f.intercept == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(f.slope_std_error == doctest::Approx(0.0).epsilon(1e-10));
    CHECK_THROWS(linear_fit({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}));
}

TEST_CASE("box count of a straight segment scales like 1/delta") {
    std::vector<cplx> seg;
    for (int i = 0; i < 1000; ++i) seg.emplace_back(0.0, i / 1000.0);  // [0, 1)
    std::size_t n8 = box_count(seg, 1.0 / 8.0, 0.0, 0.0);
    std::size_t n32 = box_count(seg, 1.0 / 32.0, 0.0, 0.0);
    CHECK(n8 == 8);
    CHECK(n32 == 32);
}

TEST_CASE("left passage smoke: reproducible, bounded, symmetric-ish") {
    Estimate a = estimate_left_passage(6.0, cplx(0.0, 1.0), 200, kSeed);
    Estimate b = estimate_left_passage(6.0, cplx(0.0, 1.0), 200, kSeed);
    CHECK(a.value == b.value);
    CHECK(a.value >= 0.0);
    CHECK(a.value <= 1.0);
    CHECK(std::abs(a.value - 0.5) < 5.0 * a.std_error + 0.01);
    CHECK_THROWS(estimate_left_passage(6.0, cplx(0.0, -1.0), 10, kSeed));
}

TEST_CASE("crossing estimator preconditions") {
    CHECK_THROWS(estimate_crossing(4.0, -1.0, 1.0, 10, kSeed));
    CHECK_THROWS(estimate_crossing(6.0, 1.0, 2.0, 10, kSeed));
    CHECK_THROWS(estimate_crossing_ratio(6.0, 1.5, 10, kSeed));
}

TEST_CASE("exact boundary absorption law") {
    // kappa <= 4: boundary points are never swallowed.
    CHECK(boundary_swallow_prob(2.0, 1.0, 100.0) == 0.0);
    CHECK(boundary_swallow_prob(4.0, 1.0, 100.0) == 0.0);
    // Reference values (mpmath regularized incomplete gamma).
    CHECK(boundary_swallow_prob(6.0, 1.0, 100.0) ==
          doctest::Approx(0.66937565797887996).epsilon(1e-10));
    CHECK(boundary_swallow_prob(6.0, 1.0, 10.0) ==
          doctest::Approx(0.51522856765204421).epsilon(1e-10));
    CHECK(boundary_swallow_prob(5.0, 0.7, 100.0) ==
          doctest::Approx(0.5094767576855591).epsilon(1e-10));
    // Monotone in T, tends to 1.
    CHECK(boundary_swallow_prob(6.0, 1.0, 1e12) > 0.99);
}

TEST_CASE("swallow estimator smoke: kappa = 2 never absorbs") {
    Estimate e = estimate_swallow_fraction(2.0, 1.0, 10.0, 300, 2000, kSeed);
    CHECK(e.value == 0.0);
    CHECK(*e.target == 0.0);
}

TEST_CASE("swallow estimator smoke: kappa = 6 tracks the exact law") {
    Estimate e = estimate_swallow_fraction(6.0, 1.0, 10.0, 500, 2000, kSeed);
    CHECK(std::abs(*e.z_score) < 4.0);
    CHECK_THROWS(estimate_swallow_fraction(6.0, 0.0, 10.0, 10, 10, kSeed));
}

TEST_CASE("derivative scan smoke") {
    DerivativeScan scan =
        estimate_derivative_exponent(2.0, 1.0, 1.0, {4.0, 8.0, 16.0, 32.0}, 4096, 300, kSeed);
    CHECK(scan.target_slope == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(scan.mc.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(scan.mc[k].value > 0.0);
        CHECK(std::abs(*scan.mc[k].z_score) < 5.0);
    }
    CHECK(scan.fit.slope == doctest::Approx(1.0).epsilon(0.3));
    CHECK_THROWS(estimate_derivative_exponent(2.0, 1.0, 1.0, {4.0, 8.0}, 64, 10, kSeed));
}

TEST_CASE("restriction ladder smoke: nested counting is monotone") {
    RestrictionConfig rc;
    rc.n_samples = 150;
    rc.master_seed = kSeed;
    std::vector<Estimate> ladder = estimate_restriction_ladder(rc, {20.0, 40.0});
    REQUIRE(ladder.size() == 2);
    CHECK(ladder[0].value >= ladder[1].value);
    for (const Estimate& e : ladder) {
        CHECK(e.value >= 0.0);
        CHECK(e.value <= 1.0);
        CHECK(*e.target == doctest::Approx(std::pow(0.5, 5.0 / 16.0)).epsilon(1e-12));
    }
}
