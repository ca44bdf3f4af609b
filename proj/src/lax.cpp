#include "bsq/lax.hpp"

#include <cmath>
#include <sstream>

#include "bsq/errors.hpp"

namespace bsq {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935274463415058724;
constexpr double kPi = 3.1415926535897932384626433832795029;

/// Exponent t * Phi_{ij}(x/t, k) computed in the form that is linear in
/// x and t separately, (l_i - l_j) x + (l_i^2 - l_j^2) t, so t = 0 is fine.
cplx t_phi(int i, int j, double x, double t, cplx k) {
    const Vec3 l = lvec(k);
    const cplx li = l[i - 1], lj = l[j - 1];
    return (li - lj) * x + (li * li - lj * lj) * t;
}

} // namespace

Vec3 lvec(cplx k) {
    return Vec3{OMEGA * k, omega_pow(2) * k, k};
}

PPair p_pair(cplx k) {
    if (k == cplx(0.0, 0.0))
        throw ValidationError("p_pair: diagonalizer is singular at k = 0");
    const cplx w = OMEGA, w2 = omega_pow(2);
    const cplx k2 = k * k;
    Complex3x3 p;
    p(0, 0) = w;      p(0, 1) = w2;     p(0, 2) = 1.0;
    p(1, 0) = w2 * k; p(1, 1) = w * k;  p(1, 2) = k;
    p(2, 0) = k2;     p(2, 1) = k2;     p(2, 2) = k2;
    // det P = -3 sqrt(3) i k^3 exactly; dividing the adjugate by it keeps
    // P^{-1} accurate down to the k = 0 singularity.
    const cplx det = cplx(0.0, -3.0 * kSqrt3) * k2 * k;
    PPair pair;
    pair.p = p;
    pair.p_inv = (1.0 / det) * p.adjugate();
    return pair;
}

Complex3x3 lax_potential(const Profile& prof, double x, cplx k) {
    const PPair pp = p_pair(k);
    const double m1 = -prof.v0(x) - prof.u0x(x);
    const double m2 = -2.0 * prof.u0(x);
    Complex3x3 m = Complex3x3::zero();
    m(2, 0) = m1;
    m(2, 1) = m2;
    return pp.p_inv * (m * pp.p);
}

Vec3 u_row(const Profile& prof, double x, cplx k) {
    if (k == cplx(0.0, 0.0))
        throw ValidationError("u_row: potential row is singular at k = 0");
    const cplx w = OMEGA, w2 = omega_pow(2);
    const double m1 = -prof.v0(x) - prof.u0x(x);
    const double m2 = -2.0 * prof.u0(x);
    const cplx scale = 1.0 / (3.0 * k * k);
    return Vec3{scale * (m1 * w + m2 * w2 * k),
                scale * (m1 * w2 + m2 * w * k),
                scale * (m1 + m2 * k)};
}

PhaseTriple phases(double zeta, cplx k) {
    const cplx w = OMEGA, w2 = omega_pow(2);
    PhaseTriple ph;
    ph.phi21 = w * (w - 1.0) * k * (zeta - k);
    ph.phi31 = (1.0 - w) * k * (zeta - w2 * k);
    ph.phi32 = (1.0 - w2) * k * (zeta - w * k);
    return ph;
}

CriticalPoints critical_points(double zeta) {
    if (!(zeta > 0.0))
        throw ValidationError("critical_points: wave speed zeta must be positive");
    CriticalPoints cp;
    cp.k0 = zeta / 2.0;
    cp.k1 = OMEGA * cp.k0;
    cp.k2 = omega_pow(2) * cp.k0;
    return cp;
}

double jump_matrix_argument(int sector, cplx k) {
    const double a = std::abs(k);
    switch (sector) {
        case 1: case 3: case 5:
            return a;   // r1 is sampled on the positive half-line
        case 2: case 4: case 6:
            return -a;  // r2 is sampled on the negative half-line
        default:
            throw ValidationError("jump_matrix_argument: sector must be 1..6");
    }
}

Complex3x3 jump_matrix(int sector, double x, double t, cplx k,
                       cplx r1_sample, cplx r2_sample) {
    if (sector < 1 || sector > 6)
        throw ValidationError("jump_matrix: sector must be 1..6");
    if (k == cplx(0.0, 0.0))
        throw ValidationError("jump_matrix: spectral point k = 0 lies on no ray");
    const double expected = (sector - 1) * kPi / 3.0;
    double diff = std::arg(k) - expected;
    diff -= 2.0 * kPi * std::floor((diff + kPi) / (2.0 * kPi));
    if (std::abs(diff) > 1e-8) {
        std::ostringstream os;
        os << "jump_matrix: spectral point with arg " << std::arg(k)
           << " does not lie on ray " << sector << " (arg " << expected << ")";
        throw ValidationError(os.str());
    }

    Complex3x3 v = Complex3x3::identity();
    switch (sector) {
        case 1: {
            const cplx e = std::exp(t_phi(2, 1, x, t, k));
            const cplx r = r1_sample;
            v(0, 1) = -r / e;
            v(1, 0) = std::conj(r) * e;
            v(1, 1) = 1.0 - std::norm(r);
            break;
        }
        case 2: {
            const cplx e = std::exp(t_phi(3, 2, x, t, k));
            const cplx r = r2_sample;
            v(1, 1) = 1.0 - std::norm(r);
            v(1, 2) = -std::conj(r) / e;
            v(2, 1) = r * e;
            break;
        }
        case 3: {
            const cplx e = std::exp(t_phi(3, 1, x, t, k));
            const cplx r = r1_sample;
            v(0, 0) = 1.0 - std::norm(r);
            v(0, 2) = std::conj(r) / e;
            v(2, 0) = -r * e;
            break;
        }
        case 4: {
            const cplx e = std::exp(t_phi(2, 1, x, t, k));
            const cplx r = r2_sample;
            v(0, 0) = 1.0 - std::norm(r);
            v(0, 1) = -std::conj(r) / e;
            v(1, 0) = r * e;
            break;
        }
        case 5: {
            const cplx e = std::exp(t_phi(3, 2, x, t, k));
            const cplx r = r1_sample;
            v(1, 2) = -r / e;
            v(2, 1) = std::conj(r) * e;
            v(2, 2) = 1.0 - std::norm(r);
            break;
        }
        case 6: {
            const cplx e = std::exp(t_phi(3, 1, x, t, k));
            const cplx r = r2_sample;
            v(0, 2) = r / e;
            v(2, 0) = -std::conj(r) * e;
            v(2, 2) = 1.0 - std::norm(r);
            break;
        }
        default:
            break;
    }
    return v;
}

Complex3x3 cyclic_matrix() {
    Complex3x3 a = Complex3x3::zero();
    a(0, 2) = 1.0;
    a(1, 0) = 1.0;
    a(2, 1) = 1.0;
    return a;
}

Complex3x3 swap_matrix() {
    Complex3x3 b = Complex3x3::zero();
    b(0, 1) = 1.0;
    b(1, 0) = 1.0;
    b(2, 2) = 1.0;
    return b;
}

} // namespace bsq
