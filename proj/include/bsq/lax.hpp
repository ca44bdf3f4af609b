#pragma once

/// Algebraic layer of a 3x3 first-order spectral problem: the eigenvalue
/// branches l_j(k), the diagonalizing pair (P, P^{-1}), the potential matrix
/// in diagonalized variables, the three phase functions that control
/// long-time stationary-phase analysis, and the oscillatory jump matrices on
/// the six rays of the spectral plane.

#include <complex>

#include "bsq/complex3.hpp"
#include "bsq/profiles.hpp"

namespace bsq {

/// Eigenvalue branches l_1 = w k, l_2 = w^2 k, l_3 = k with w = e^{2 pi i/3}.
Vec3 lvec(cplx k);

struct PPair {
    Complex3x3 p;
    Complex3x3 p_inv;
};

/// Diagonalizer P(k) and its exact inverse (adjugate over determinant,
/// det P = -3 sqrt(3) i k^3).  k = 0 is a genuine singularity.
PPair p_pair(cplx k);

/// Potential in diagonalized variables, U = P^{-1} M(x) P, where M couples
/// the wave field into the third row only.  Generic form for testing.
Complex3x3 lax_potential(const Profile& p, double x, cplx k);

/// Rank-one structure of U: U = (1/(3k^2)) * ones * row^T.  Returns row
/// together with the overall 1/(3k^2) factor already applied.
Vec3 u_row(const Profile& p, double x, cplx k);

struct PhaseTriple {
    cplx phi21;
    cplx phi31;
    cplx phi32;
};

/// Phase functions Phi_{ij}(zeta, k) = (l_i - l_j)(k) zeta - (z_i - z_j)(k)
/// with z_j = -l_j^2, written in factored form.
PhaseTriple phases(double zeta, cplx k);

struct CriticalPoints {
    double k0;      ///< stationary point of Phi21 on the positive half-line
    cplx k1;        ///< image w k0
    cplx k2;        ///< image w^2 k0
};

/// Stationary points of the controlling phase at wave speed zeta = x/t > 0.
CriticalPoints critical_points(double zeta);

/// Jump matrix on ray `sector` (1..6, ray j along arg k = (j-1) pi/3) at the
/// spectral point k (which must lie on that ray).  The reflection samples
/// r1_sample / r2_sample must be evaluated by the caller at the real argument
/// the matrix formula uses for this sector (see jump_matrix_argument).
Complex3x3 jump_matrix(int sector, double x, double t, cplx k,
                       cplx r1_sample, cplx r2_sample);

/// The real spectral argument at which the reflection coefficients entering
/// jump_matrix(sector, ..., k, ...) are evaluated: +|k| or -|k| depending on
/// the sector's rotation.  Sectors {1,3,5} use r1, sectors {2,4,6} use r2.
double jump_matrix_argument(int sector, cplx k);

/// Cyclic rotation matrix A (A e1 = e2, A e2 = e3, A e3 = e1) implementing
/// the v(zeta, t, k) = A v(zeta, t, w k) A^{-1} ray symmetry.
Complex3x3 cyclic_matrix();

/// Swap matrix B (exchanges rows/cols 1 and 2) implementing the
/// v = B conj(v(zeta, t, conj(k)))^{-1} B ray symmetry.
Complex3x3 swap_matrix();

} // namespace bsq
