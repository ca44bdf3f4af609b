#pragma once

/// Long-time asymptotics along rays x/t = zeta: the stationary point
/// k0 = zeta/2, the local exponent nu, the singular-integral factors chi1
/// and delta1, the logarithmic tail integral, and the explicit leading-order
/// wave form u(x, t) ~ -envelope * sin(phase).

#include <complex>

#include "bsq/complex3.hpp"
#include "bsq/scatter.hpp"

namespace bsq {

/// nu = -ln(1 - abs_q2)/(2 pi); abs_q2 >= 1 violates the validity sector.
double nu_of(double abs_q2);

/// Cubic (4-nearest-node) interpolation of r1 on a sampled spectral line.
cplx interp_r1(const SpectralLine& line, double k);

/// Same interpolation applied to ell'(s) = d/ds ln(1 - |r1(s)|^2).
double interp_ell_prime(const SpectralLine& line, double k);

/// chi1(zeta, k) = (1/2 pi i) int_{k0}^{inf} ln0(k - s) d ln(1 - |r1(s)|^2),
/// with ln0 the branch with arg in (0, 2 pi); truncated at line.k_max where
/// |r1| < 1e-10 makes the remainder negligible.  k = k0 takes the
/// nontangential-limit path (log-singular quadrature); k on the open cut
/// (k0, inf) is a branch error.
cplx chi1(double zeta, cplx k, const SpectralLine& line, double quad_tol = 1e-9);

/// delta1(zeta, k) = exp{(1/2 pi i) int_{k0}^{inf} ln(1-|r1(s)|^2)/(s-k) ds}
/// (diagnostic).  The cut [k0, inf) including the endpoint is rejected.
cplx delta1(double zeta, cplx k, const SpectralLine& line, double quad_tol = 1e-9);

/// Boundary-value ratio delta1+/delta1- at a cut point s0 in (k0, k_max),
/// computed on the ladder eps in {4,2,1}*eps0 and extrapolated to eps = 0
/// on the basis {1, eps ln eps, eps}.  Expected to equal 1 - |r1(s0)|^2.
cplx delta1_jump_ratio(double zeta, double s0, const SpectralLine& line,
                       double eps0 = 1e-6, double quad_tol = 1e-10);

/// (1/pi) int_{k0}^{inf} ln|(s-k0)/(s-omega k0)| d ln(1-|r1(s)|^2): the
/// first kernel through log-singular quadrature (log singularity at s = k0),
/// the second through plain adaptive quadrature (|s - omega k0| >=
/// k0 sqrt(3)/2 on the ray).
double tail_integral(const SpectralLine& line, double zeta, double quad_tol = 1e-9);

struct AsymConfig {
    double margin = 0.05;   ///< required clearance of zeta above zeta0
    double eps_q = 1e-6;    ///< validity needs |r1(k0)| <= 1 - eps_q
    double quad_tol = 1e-9;
};

struct AsymptoticParams {
    double zeta = 0.0;
    double k0 = 0.0;        ///< = zeta/2 exactly
    double nu = 0.0;
    cplx q{0.0, 0.0};       ///< r1(k0), interpolated
    double arg_q = 0.0;
    double gamma_arg = 0.0; ///< arg Gamma(i nu); 0 when nu = 0
    double tail = 0.0;      ///< the ray integral above
    double zeta0 = 0.0;     ///< threshold speed detected from the line
    bool valid = false;
};

/// Bundle every scalar entering the leading-order formula for the ray
/// x/t = zeta.  Throws a sector error when zeta <= zeta0 + margin, before
/// any heavy quadrature.
AsymptoticParams asym_params(const SpectralLine& line, double zeta,
                             const AsymConfig& cfg = {});

struct UAsymValue {
    double u = 0.0;
    double envelope = 0.0;
    double phase = 0.0;
};

/// Leading-order wave along the ray: envelope = 3^{5/4} k0 sqrt(nu/(2t)),
/// phase = 19 pi/12 + nu ln(6 sqrt(3) t k0^2) - sqrt(3) k0^2 t - arg q
/// - arg Gamma(i nu) + tail, u = -envelope * sin(phase).  Requires
/// x/t = params.zeta to 1e-12 and t >= 2.
UAsymValue u_asym(const AsymptoticParams& params, double x, double t);

} // namespace bsq
