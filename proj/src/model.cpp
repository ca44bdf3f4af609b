#include "bsq/model.hpp"

#include <cmath>
#include <sstream>

#include "bsq/errors.hpp"
#include "bsq/gamma.hpp"

namespace bsq {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795029;
constexpr double kSqrt2Pi = 2.5066282746310005024157652848110453;
} // namespace

CrossCoefficients cross_coefficients(cplx q) {
    const double abs2 = std::norm(q);
    if (abs2 == 0.0)
        throw ValidationError("cross_coefficients: q = 0 is degenerate (the coefficient "
                              "formulas divide by q)");
    if (abs2 >= 1.0) {
        std::ostringstream os;
        os << "cross_coefficients: |q| = " << std::abs(q) << " must be < 1";
        throw ValidationError(os.str());
    }

    CrossCoefficients cc;
    cc.q = q;
    cc.nu_q = -std::log1p(-abs2) / (2.0 * kPi);
    if (1.5 * kPi * cc.nu_q > 700.0)
        throw ValidationError("cross_coefficients: nu(q) too large, the exponential "
                              "prefactors overflow double precision");

    const GammaPolar g = gamma_polar(cc.nu_q);
    const double abs_q = std::abs(q);
    const double arg_q = std::arg(q);

    // beta21 = sqrt(2 pi) e^{i pi/4} e^{3 pi nu/2} / (q Gamma(i nu))
    cc.beta21 = std::polar(kSqrt2Pi * std::exp(1.5 * kPi * cc.nu_q) / (abs_q * g.abs),
                           kPi / 4.0 - arg_q - g.arg);
    // beta12 = sqrt(2 pi) e^{-i pi/4} e^{-5 pi nu/2} / (conj(q) Gamma(-i nu))
    cc.beta12 = std::polar(kSqrt2Pi * std::exp(-2.5 * kPi * cc.nu_q) / (abs_q * g.abs),
                           -kPi / 4.0 + arg_q + g.arg);

    cc.m1X = Complex3x3::zero();
    cc.m1X(0, 1) = cc.beta12;
    cc.m1X(1, 0) = cc.beta21;
    return cc;
}

} // namespace bsq
