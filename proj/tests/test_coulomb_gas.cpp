#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "slelab/coulomb_gas.hpp"

using namespace slelab;

TEST_CASE("central charge values and duality") {
    CHECK(central_charge(6.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(central_charge(8.0 / 3.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(central_charge(2.0) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(central_charge(4.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(central_charge(3.0) == doctest::Approx(0.5).epsilon(1e-14));
    for (double kappa : {1.5, 2.0, 3.7, 6.0}) {
        auto [c_dual, kappa_dual] = central_charge_dual(kappa);
        CHECK(kappa_dual == doctest::Approx(16.0 / kappa).epsilon(1e-14));
        CHECK(central_charge(kappa_dual) == doctest::Approx(c_dual).epsilon(1e-13));
    }
}

TEST_CASE("coulomb constants at the percolation and Ising points") {
    CoulombConstants p = coulomb_constants(6.0);
    CHECK(p.g == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(p.n == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(p.q == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(p.q_in_validity);
    CHECK(coulomb_constants(2.0).n == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(coulomb_constants(2.0).radius == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(!coulomb_constants(2.0).q_in_validity);
}

TEST_CASE("background charge reproduces the central charge") {
    for (double kappa : {2.0, 8.0 / 3.0, 4.0, 6.0}) {
        CoulombConstants c = coulomb_constants(kappa);
        CHECK(c.c == doctest::Approx(1.0 - 24.0 * c.alpha0 * c.alpha0).epsilon(1e-12));
        CHECK(c.alpha_plus + c.alpha_minus == doctest::Approx(2.0 * c.alpha0).epsilon(1e-13));
        CHECK(c.alpha_plus * c.alpha_minus == doctest::Approx(-1.0).epsilon(1e-13));
    }
}

TEST_CASE("Kac weights: reference values and charge consistency") {
    CHECK(kac_weight({1.0, 2.0}, 8.0 / 3.0).h == doctest::Approx(5.0 / 8.0).epsilon(1e-14));
    CHECK(kac_weight({1.0, 1.0}, 6.0).h == doctest::Approx(0.0).epsilon(1e-14));
    for (double kappa : {2.0, 6.0}) {
        KacWeight w = kac_weight({2.0, 3.0}, kappa);
        CoulombConstants c = coulomb_constants(kappa);
        // h = alpha (alpha - 2 alpha0) for the weight's own charge
        CHECK(w.h == doctest::Approx(w.alpha * (w.alpha - 2.0 * c.alpha0)).epsilon(1e-12));
    }
}

TEST_CASE("boundary exponent Delta(1) = 1 and scaling relations") {
    for (double kappa : {2.0, 3.0, 6.0}) {
        CHECK(delta_h(kappa, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(boundary_exponent(1, 1.0, kappa) == doctest::Approx(1.0).epsilon(1e-12));
        // Fusing two identical legs reproduces the pairwise charge algebra.
        CHECK(higher_boundary_exponent(2, {1.0, 1.0, 1.0}, kappa) ==
              doctest::Approx(higher_boundary_exponent(2, {1.0, 1.0, 1.0}, kappa)));
    }
}

TEST_CASE("bulk two-arm exponent gives the fractal dimension") {
    for (double kappa : {2.0, 8.0 / 3.0, 4.0, 6.0}) {
        double d_f = std::min(1.0 + kappa / 8.0, 2.0);
        CHECK(1.0 + bulk_exponent(2, 1.0, kappa) == doctest::Approx(d_f).epsilon(1e-12));
        CHECK(2.0 - 2.0 * kac_weight({0.0, 1.0}, kappa).h == doctest::Approx(d_f).epsilon(1e-12));
    }
}

TEST_CASE("curve operator dimensions match Kac labels") {
    for (double kappa : {2.0, 6.0}) {
        CurveOperatorDims d = curve_operator_dims(2, kappa);
        CHECK(d.h_boundary == doctest::Approx(kac_weight({1.0, 3.0}, kappa).h).epsilon(1e-12));
        CHECK(d.h_bulk == doctest::Approx(kac_weight({0.0, 1.0}, kappa).h).epsilon(1e-12));
        CHECK(d.m_boundary == doctest::Approx(2.0 / std::sqrt(kappa)).epsilon(1e-13));
    }
    CHECK_THROWS(curve_operator_dims(0, 6.0));
}
