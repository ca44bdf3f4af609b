// Adaptive Gauss-Kronrod quadrature and a graded-mesh rule for integrands
// with a logarithmic endpoint singularity.
//
// Both rules return a QuadResult carrying the value, an error estimate and
// the number of integrand evaluations. adaptive_quad drives a G7-K15 pair
// with worst-interval-first subdivision under a hard evaluation budget;
// log_singular_quad integrates ln|s-k0| * g(s) on [k0, K] over dyadic panels
// accumulating at k0, so the log kernel never needs special weights.
#pragma once

#include <complex>
#include <functional>

namespace bsq {

struct QuadResult {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0; ///< >= 0
    long evaluations = 0;        ///< >= 1 on success
};

using Integrand = std::function<std::complex<double>(double)>;

inline constexpr long kQuadDefaultBudget = 200000;

/// Integrate f over [a, b] to absolute-or-relative tolerance tol.
///
/// Throws ValidationError if a >= b or tol <= 0. Throws StabilityError
/// ("budget exceeded") if the evaluation budget runs out before the
/// tolerance is met; the error message carries the best estimate.
QuadResult adaptive_quad(const Integrand& f, double a, double b, double tol,
                         long budget = kQuadDefaultBudget);

/// Integrate ln|s - k0| * g(s) over [k0, K] for smooth g.
///
/// Dyadic panels [k0 + w 2^{-j-1}, k0 + w 2^{-j}], w = K - k0, are stacked
/// down to width 1e-12 w; each panel sees a smooth integrand and gets the
/// G7-K15 pair. The sub-resolution stub at k0 is added in closed form with
/// g frozen at g(k0) and its size folded into the error estimate.
QuadResult log_singular_quad(const Integrand& g, double k0, double K, double tol);

} // namespace bsq
