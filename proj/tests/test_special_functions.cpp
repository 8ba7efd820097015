#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "slelab/special_functions.hpp"

using namespace slelab;

// Reference values computed with mpmath at 30 digits.

TEST_CASE("gamma function: recursion and half-integer value") {
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    for (double x : {0.3, 1.7, 4.2, 7.9})
        CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-13));
}

TEST_CASE("pochhammer matches gamma ratio") {
    CHECK(pochhammer(3.0, 4) == doctest::Approx(3.0 * 4.0 * 5.0 * 6.0));
    CHECK(pochhammer(0.5, 3) == doctest::Approx(0.5 * 1.5 * 2.5));
    CHECK(pochhammer(2.0, 0) == doctest::Approx(1.0));
}

TEST_CASE("Gauss hypergeometric 2F1 against reference values") {
    CHECK(hyp2f1(1.0, 1.0, 2.0, 0.5) == doctest::Approx(1.3862943611198906).epsilon(1e-12));
    // Arguments outside the raw series radius exercise the Pfaff transform.
    CHECK(hyp2f1(0.5, 2.0 / 3.0, 1.5, -1.0) ==
          doctest::Approx(0.84713800660298035).epsilon(1e-12));
    CHECK(hyp2f1(0.5, 1.5, 1.5, -4.0) == doctest::Approx(0.44721359549995794).epsilon(1e-12));
    CHECK(hyp2f1(0.5, 2.0, 1.5, -9.0) == doctest::Approx(0.25817429539970907).epsilon(1e-12));
}

TEST_CASE("2F1 symmetry in the upper parameters") {
    for (double x : {-3.0, -0.4, 0.2, 0.7})
        CHECK(hyp2f1(0.6, 1.3, 2.1, x) == doctest::Approx(hyp2f1(1.3, 0.6, 2.1, x)).epsilon(1e-13));
}

TEST_CASE("confluent hypergeometric 1F1 against reference values") {
    CHECK(hyp1f1(1.0, 2.0, 1.0) == doctest::Approx(1.7182818284590452).epsilon(1e-9));
    CHECK(hyp1f1(0.75, 1.9, 3.3) == doctest::Approx(5.8278957889822622).epsilon(1e-9));
}

TEST_CASE("complete elliptic integral by AGM against reference values") {
    CHECK(elliptic_K(0.5) == doctest::Approx(1.685750354812596).epsilon(1e-13));
    CHECK(elliptic_K(0.9) == doctest::Approx(2.2805491384227702).epsilon(1e-13));
    CHECK(elliptic_K(0.0) == doctest::Approx(M_PI / 2).epsilon(1e-14));
}

TEST_CASE("complementary integral K' is K of the complementary modulus") {
    for (double k : {0.1, 0.5, 0.9}) {
        double kp = std::sqrt(1.0 - k * k);
        CHECK(elliptic_Kprime(k) == doctest::Approx(elliptic_K(kp)).epsilon(1e-13));
    }
}

TEST_CASE("Jacobi sn against reference values") {
    CHECK(jacobi_sn({0.7, 0.0}, 0.6).real() ==
          doctest::Approx(0.62991711532348681).epsilon(1e-12));
    CHECK(jacobi_sn({0.7, 0.0}, 0.6).imag() == doctest::Approx(0.0).epsilon(1e-12));
    std::complex<double> w = jacobi_sn({0.3, 0.4}, 0.6);
    CHECK(w.real() == doctest::Approx(0.32629355157195224).epsilon(1e-12));
    CHECK(w.imag() == doctest::Approx(0.38840916147763776).epsilon(1e-12));
}

TEST_CASE("Jacobi sn quarter-period identity sn(K) = 1") {
    for (double k : {0.3, 0.6, 0.9})
        CHECK(jacobi_sn({elliptic_K(k), 0.0}, k).real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("series rejects arguments at the branch point") {
    CHECK_THROWS((void)hyp2f1(1.0, 1.0, 2.0, 1.0));
}
