#pragma once

/// Parabolic-cylinder model-problem coefficients: the local parameter
/// nu(q) = -ln(1 - |q|^2)/(2 pi) and the subleading coefficient matrix whose
/// only nonzero entries are the cross terms beta12 and beta21.

#include <complex>

#include "bsq/complex3.hpp"

namespace bsq {

struct CrossCoefficients {
    cplx q;
    double nu_q = 0.0;
    cplx beta12;
    cplx beta21;
    Complex3x3 m1X; ///< nonzero only at (1,2) and (2,1)
};

/// Evaluate nu(q), beta12, beta21 for 0 < |q| < 1.  Gamma(-i nu) is obtained
/// from Gamma(i nu) by conjugation, never by separate evaluation, so the
/// product identity beta12 * beta21 = nu holds by construction up to
/// rounding.
CrossCoefficients cross_coefficients(cplx q);

} // namespace bsq
