#include "bsq/gamma.hpp"

#include <cmath>

#include "bsq/errors.hpp"

namespace bsq {

namespace {

// Lanczos coefficients for g = 7 (Godfrey's table, standard double-precision
// set used by e.g. Numerical Recipes and Boost.Math).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562; // ln(2 pi)/2

} // namespace

std::complex<double> lgamma_complex(std::complex<double> z) {
    // Lanczos is formulated for Gamma(1 + w); shift so w = z - 1.
    const std::complex<double> w = z - 1.0;
    std::complex<double> a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (w + static_cast<double>(i));
    const std::complex<double> t = w + kLanczosG + 0.5;
    return kHalfLog2Pi + (w + 0.5) * std::log(t) - t + std::log(a);
}

double gamma_abs_closed_form(double nu) {
    const double s = std::expm1(M_PI * nu) - std::expm1(-M_PI * nu); // e^{pi nu} - e^{-pi nu}
    return std::sqrt(2.0 * M_PI / (nu * s));
}

GammaPolar gamma_polar(double nu) {
    if (!(nu > 0.0))
        throw ValidationError("gamma_polar: nu must be > 0 (got " + std::to_string(nu) + ")");
    // e^{pi nu} used by the modulus identity overflows past this threshold.
    const double nu_overflow = 709.0 / M_PI; // ~225.7
    if (nu > nu_overflow)
        throw ValidationError("gamma_polar: nu=" + std::to_string(nu) +
                              " exceeds the e^{pi nu} overflow threshold nu_max=" +
                              std::to_string(nu_overflow));

    // Gamma(i nu) = Gamma(1 + i nu) / (i nu); the shifted argument has
    // Re = 1 >= 0.5 where the Lanczos form is valid.
    const std::complex<double> lg = lgamma_complex({1.0, nu});
    const double abs = std::exp(lg.real()) / nu;
    // arg Gamma(i nu) = Im lgamma(1 + i nu) - arg(i nu), wrapped to (-pi, pi].
    double arg = lg.imag() - M_PI / 2.0;
    arg -= 2.0 * M_PI * std::floor((arg + M_PI) / (2.0 * M_PI));
    if (arg <= -M_PI) arg += 2.0 * M_PI; // guard the open end of (-pi, pi]
    return {abs, arg};
}

} // namespace bsq
