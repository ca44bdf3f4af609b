/// Parabolic-cylinder model-problem coefficients: the exact product identity
/// beta12 * beta21 = nu, the polar-form phases, and the degenerate-input
/// gates.

#include "doctest.h"

#include <cmath>
#include <complex>

#include "bsq/errors.hpp"
#include "bsq/gamma.hpp"
#include "bsq/model.hpp"

using namespace bsq;

namespace {
constexpr double kPi = 3.1415926535897932384626433832795029;
} // namespace

TEST_SUITE("model") {

TEST_CASE("product identity beta12 beta21 = nu") {
    for (const double aq : {0.1, 0.5, 0.9}) {
        for (const double ph : {0.0, 1.0, -2.0, kPi / 2.0, 3.0}) {
            const cplx q = std::polar(aq, ph);
            const CrossCoefficients cc = cross_coefficients(q);
            const cplx prod = cc.beta12 * cc.beta21;
            CHECK(std::abs(prod - cplx(cc.nu_q, 0.0)) <= 1e-12 * cc.nu_q);
        }
    }
}

TEST_CASE("frozen nu value") {
    const cplx q = std::polar(0.5, 0.3); // |q|^2 = 0.25
    const CrossCoefficients cc = cross_coefficients(q);
    CHECK(cc.nu_q == doctest::Approx(0.045786023869621704).epsilon(1e-15));
}

TEST_CASE("small-|q| limit nu ~ |q|^2 / (2 pi)") {
    const double aq = 1e-4;
    const CrossCoefficients cc = cross_coefficients(cplx(aq, 0.0));
    const double leading = aq * aq / (2.0 * kPi);
    CHECK(std::abs(cc.nu_q - leading) <= 1e-7 * leading);
}

TEST_CASE("polar-form phases") {
    const cplx q = std::polar(0.4, -1.1);
    const CrossCoefficients cc = cross_coefficients(q);
    const GammaPolar g = gamma_polar(cc.nu_q);
    // arg beta21 = pi/4 - arg q - arg Gamma(i nu)  (mod 2 pi)
    const double expect21 = kPi / 4.0 - std::arg(q) - g.arg;
    CHECK(std::abs(std::polar(1.0, std::arg(cc.beta21) - expect21) - cplx(1.0, 0.0)) <= 1e-13);
    // arg beta12 = -(arg beta21) by the conjugate structure
    const double expect12 = -kPi / 4.0 + std::arg(q) + g.arg;
    CHECK(std::abs(std::polar(1.0, std::arg(cc.beta12) - expect12) - cplx(1.0, 0.0)) <= 1e-13);
    // moduli: |beta21| carries e^{3 pi nu / 2}, |beta12| carries e^{-5 pi nu / 2}
    const double base = 2.5066282746310005 / (std::abs(q) * g.abs);
    CHECK(std::abs(cc.beta21) ==
          doctest::Approx(base * std::exp(1.5 * kPi * cc.nu_q)).epsilon(1e-13));
    CHECK(std::abs(cc.beta12) ==
          doctest::Approx(base * std::exp(-2.5 * kPi * cc.nu_q)).epsilon(1e-13));
}

TEST_CASE("coefficient matrix is strictly off-diagonal") {
    const CrossCoefficients cc = cross_coefficients(cplx(0.3, 0.2));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == 0 && j == 1)
                CHECK(cc.m1X(i, j) == cc.beta12);
            else if (i == 1 && j == 0)
                CHECK(cc.m1X(i, j) == cc.beta21);
            else
                CHECK(cc.m1X(i, j) == cplx(0.0, 0.0));
        }
    }
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(cross_coefficients(cplx(0.0, 0.0)), ValidationError);
    CHECK_THROWS_AS(cross_coefficients(cplx(1.0, 0.0)), ValidationError);
    CHECK_THROWS_AS(cross_coefficients(std::polar(1.3, 0.4)), ValidationError);
}

} // TEST_SUITE
