#pragma once

/// Direct scattering for the 3x3 spectral problem: adaptive ODE sweeps for
/// the eigenfunction columns (forward and adjoint), concurrent accumulation
/// of the scattering entries, reflection coefficients r1/r2, the spectral
/// line on a k-grid, the wave-speed threshold zeta0, and assumption reports.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "bsq/complex3.hpp"
#include "bsq/policy.hpp"
#include "bsq/profiles.hpp"

namespace bsq {

enum class ScatterMode { columns, full };

/// Options for a single ODE sweep from x = +X_inf down to x = -X_inf.
struct SweepOptions {
    double tol = 1e-10;           ///< relative local-error tolerance
    double support_eps = 1e-14;   ///< effective-support cutoff fixing X_inf
    double x_inf_override = 0.0;  ///< > 0 forces the integration half-width
    bool adjoint = false;         ///< integrate the transposed (adjoint) system
    bool growth_assert = true;    ///< enforce the Gronwall non-growth bound (real k)
};

struct SweepResult {
    std::vector<int> cols;        ///< requested 1-based columns (columns mode)
    std::vector<Vec3> end_columns;///< normalized eigenfunction columns at x = -X_inf
    /// Accumulated scattering matrix.  In full mode all nine entries are
    /// valid; in columns mode only rows 1-2 x requested columns are
    /// meaningful (the rest is identity padding).
    Complex3x3 s;
    ScatterMode mode = ScatterMode::columns;
    bool adjoint = false;
    double x_inf = 0.0;
    long n_steps = 0;
    long n_rhs = 0;
    bool converged = false;
};

/// Integrate the eigenfunction ODE downward from x = +X_inf with identity
/// normalization, accumulating the scattering entries in the same pass.
/// Columns mode integrates the requested columns (subset of {1,2}; column 3
/// has an exponentially growing Volterra kernel for Re k > 0 and is
/// rejected); full mode integrates the whole matrix and requires a
/// super-exponential profile within the dynamic-range gate
/// max |Re(l_i - l_j)| * X_inf <= 25.
SweepResult integrate_X(const Profile& p, cplx k, const std::vector<int>& cols,
                        ScatterMode mode, const SweepOptions& opt);
SweepResult integrate_X(const Profile& p, cplx k, const std::vector<int>& cols,
                        ScatterMode mode, double tol);

/// Adjoint sweep (transposed potential, reversed exponent signs); the
/// accumulated matrix is the adjoint scattering matrix sA.
SweepResult integrate_XA(const Profile& p, cplx k, const std::vector<int>& cols,
                         ScatterMode mode, const SweepOptions& opt);

struct ScatterSample {
    cplx k;
    cplx s11;
    cplx s12;
    std::optional<Complex3x3> full_s;
    ScatterMode mode = ScatterMode::columns;
    bool converged = false;
    double est_error = 0.0;
};

/// Scattering entries s11, s12 at real k > 0 (or complex k in the closed
/// sector arg k in [0, pi/3]).  |k| below k_min is rejected: s11 carries a
/// double pole at the origin and direct evaluation is ill-conditioned.
ScatterSample s_entries(const Profile& p, cplx k, ScatterMode mode,
                        double tol = 1e-10, double k_min = 1e-3);

/// Adjoint entries sA11, sA12 at real k < 0 (or complex k with
/// arg k in [pi, 4pi/3]); the stability analysis mirrors under k -> -k.
ScatterSample sA_entries(const Profile& p, cplx k, ScatterMode mode,
                         double tol = 1e-10, double k_min = 1e-3);

enum class ReflectionKind { r1, r2 };

/// Reflection coefficient r1(k) = s12/s11 (k > 0) or r2(k) = sA12/sA11
/// (k < 0).  A denominator below 1e-12 aborts with a soliton-suspected
/// error instead of returning a huge quotient.  est_error (optional out)
/// receives the propagated error estimate.
cplx reflection(const Profile& p, double k, ReflectionKind which,
                double tol = 1e-10, double* est_error = nullptr);

struct SpectralLine {
    std::vector<double> k;         ///< strictly increasing positive nodes
    std::vector<cplx> r1;
    std::vector<double> abs2;      ///< |r1|^2 per node
    std::vector<double> ell_prime; ///< d/dk ln(1 - |r1|^2) per node
    std::vector<double> est_error; ///< per-node propagated ODE error estimate
    double k_max = 0.0;            ///< largest node
    cplx r1_origin{0.0, 0.0};      ///< quadratic extrapolation of r1 to k = 0
    double origin_gap = 0.0;       ///< |r1_origin - omega|
};

struct LineConfig {
    double tol = 1e-10;
    double k_min = 1e-3;
    Exec exec = Exec::openmp;
};

/// Sample r1 on a k-grid (nodes independent, parallelizable; assembly in
/// grid order so results are scheduling-independent) and differentiate
/// ln(1 - |r1|^2) with 5-point Lagrange stencils (one-sided at the ends).
SpectralLine spectral_line(const Profile& p, const std::vector<double>& k_grid,
                           const LineConfig& cfg = {});

/// Largest wave speed 2*k at which |r1(k)| = 1, from a sampled line: scans
/// from k_max downward for the last crossing, bisection-refines it to 1e-8
/// in k (ties toward larger k), and returns 0 when |r1| < 1 on the whole
/// grid.  |r1| >= 1 at the top node means the grid stops too early.
double compute_zeta0(const SpectralLine& line);

/// Quadratic extrapolations on the origin ladder {4,2,1} * k_min.
struct OriginLimits {
    cplx r1_extrap;
    cplx r2_extrap;
    cplx k2s11_extrap;            ///< limit of k^2 s11(k)
    double r1_gap;                ///< |r1_extrap - omega|
    double r2_gap;                ///< |r2_extrap - 1|
    double k2s11_consistency;     ///< |extrap - finest rung| / |extrap|
    std::array<cplx, 3> k2s11_rungs; ///< at 4*k_min, 2*k_min, k_min
};
OriginLimits origin_limits(const Profile& p, double k_min = 1e-3,
                           double tol = 1e-10);

enum class Verdict { pass, fail, inconclusive };

struct AssumptionConfig {
    double k_min = 1e-3;
    double k_sector_max = 3.0;
    int n_radial = 16;            ///< log-spaced radii in [k_min, k_sector_max]
    int n_spokes = 5;             ///< angles from 0 to pi/3 inclusive
    double a1_pass_threshold = 1e-3;
    double a1_fail_threshold = 1e-10;
    double a2_threshold = 1e-6;
    double tol = 1e-10;
    Exec exec = Exec::openmp;
};

struct AssumptionReport {
    double min_abs_s11_D1 = 0.0;
    cplx argmin_k_D1{0.0, 0.0};
    double min_abs_sA11_D4 = 0.0;
    cplx argmin_k_D4{0.0, 0.0};
    cplx origin_limit_s{0.0, 0.0};   ///< extrapolated k^2 s11
    cplx origin_limit_sA{0.0, 0.0};  ///< extrapolated k^2 sA11
    double origin_consistency = 0.0;
    Verdict assumption1 = Verdict::inconclusive; ///< s11, sA11 nonvanishing in sectors
    Verdict assumption2 = Verdict::inconclusive; ///< k^2 s11 -> nonzero origin limit
    std::string diagnostic;
};

/// Mesh scan of |s11| over the closed sector between the rays arg k = 0 and
/// arg k = pi/3 (interior spokes included) and of |sA11| over the mirrored
/// sector, plus the origin-ladder extrapolation of k^2 s11.  Integration
/// instability inside a sector yields an inconclusive verdict with a
/// diagnostic, never a silent pass.
AssumptionReport assumption_checks(const Profile& p,
                                   const AssumptionConfig& cfg = {});

const char* verdict_name(Verdict v);

} // namespace bsq
