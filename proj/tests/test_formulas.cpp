#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "slelab/formulas.hpp"

using namespace slelab;

// Reference values computed with mpmath at 30 digits.

TEST_CASE("Schramm left-passage probability reference values") {
    CHECK(left_passage_prob(4.0, 1.0, 1.0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(left_passage_prob(8.0 / 3.0, 1.0, 1.0) ==
          doctest::Approx(0.85355339059327376).epsilon(1e-12));
    CHECK(left_passage_prob(2.0, 1.0, 1.0) ==
          doctest::Approx(0.90915494309189534).epsilon(1e-12));
    CHECK(left_passage_prob(6.0, 1.0, 1.0) ==
          doctest::Approx(0.61627005134721117).epsilon(1e-12));
    CHECK(left_passage_prob(6.0, 0.5, 2.0) ==
          doctest::Approx(0.5338503690313035).epsilon(1e-12));
}

TEST_CASE("left passage: symmetry and monotonicity") {
    for (double kappa : {2.0, 4.0, 6.0}) {
        CHECK(left_passage_prob(kappa, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(left_passage_prob(kappa, 1.0, 1.0) + left_passage_prob(kappa, -1.0, 1.0) ==
              doctest::Approx(1.0).epsilon(1e-13));
    }
    CHECK(left_passage_prob(6.0, 2.0, 1.0) > left_passage_prob(6.0, 1.0, 1.0));
    CHECK_THROWS(left_passage_prob(8.5, 1.0, 1.0));
    CHECK_THROWS(left_passage_prob(6.0, 1.0, -1.0));
}

TEST_CASE("Cardy crossing reference values and duality") {
    CHECK(cardy_crossing(6.0, 0.3) == doctest::Approx(0.401227613791358).epsilon(1e-12));
    CHECK(cardy_crossing(6.0, 0.7) == doctest::Approx(0.598772386208642).epsilon(1e-12));
    CHECK(cardy_crossing(6.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cardy_crossing(5.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    for (double r : {0.2, 0.4, 0.45})
        CHECK(cardy_crossing(6.0, r) + cardy_crossing(6.0, 1.0 - r) ==
              doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(cardy_crossing(4.0, 0.5));
    CHECK_THROWS(cardy_crossing(6.0, 0.0));
}

TEST_CASE("rectangle geometry: the square maps to cross-ratio 1/2") {
    RectangleGeometry g = rectangle_to_r(1.0);
    CHECK(g.modulus == doctest::Approx(0.1715728752538099).epsilon(1e-12));
    CHECK(g.cross_ratio == doctest::Approx(0.5).epsilon(1e-12));
    // Taller rectangles (aspect = height/width) are harder to cross
    // horizontally: the cross-ratio moves toward 1.
    CHECK(rectangle_to_r(2.0).cross_ratio > 0.5);
    CHECK(rectangle_to_r(0.5).cross_ratio < 0.5);
}

TEST_CASE("fractal dimension values and space-filling cap") {
    CHECK(fractal_dimension(8.0 / 3.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(fractal_dimension(6.0) == doctest::Approx(1.75).epsilon(1e-14));
    CHECK(fractal_dimension(8.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fractal_dimension(10.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("derivative expectation reference values") {
    CHECK(derivative_expectation(2.0, 1.0, 1.0, 4.0) ==
          doctest::Approx(0.18574352757456996).epsilon(1e-10));
    CHECK(derivative_expectation(8.0 / 3.0, 0.625, 1.0, 10.0) ==
          doctest::Approx(0.20111238008832391).epsilon(1e-10));
}

TEST_CASE("restriction formula for the vertical slit") {
    // P = phi'(x0)^{5/8} with phi'(1) = 1/sqrt(2) for the unit slit at 1.
    CHECK(restriction_prob_slit({1.0, 1.0}) ==
          doctest::Approx(std::pow(0.5, 5.0 / 16.0)).epsilon(1e-12));
    // Short slits barely restrict; long slits restrict strongly.
    CHECK(restriction_prob_slit({1.0, 0.01}) > 0.99);
    CHECK(restriction_prob_slit({1.0, 50.0}) < 0.2);
}

TEST_CASE("escape solver reproduces the exact zero mode") {
    for (double kappa : {2.0, 3.0, 6.0}) {
        auto drift = [](double s) { return 2.0 / s; };
        auto dsq = [kappa](double) { return kappa; };
        double e = 1.0 - 4.0 / kappa;
        auto f = [e](double s) { return std::pow(s, e); };
        double exact = (f(2.0) - f(1.0)) / (f(2.0) - f(0.5));
        CHECK(escape_probability(drift, dsq, 0.5, 2.0, 1.0) ==
              doctest::Approx(exact).epsilon(1e-10));
    }
}
