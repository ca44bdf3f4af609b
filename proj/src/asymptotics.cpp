#include "bsq/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bsq/errors.hpp"
#include "bsq/gamma.hpp"
#include "bsq/quadrature.hpp"

namespace bsq {
namespace {

constexpr double kPi = 3.1415926535897932384626433832795029;
constexpr double kSqrt3 = 1.7320508075688772935274463415058724;

/// arg on the branch (0, 2 pi]: the standard atan2 value shifted up when it
/// falls in (-pi, 0].  The positive real axis itself (arg -> 2 pi) is the
/// branch cut and is excluded by the callers' domain checks.
double arg0(cplx z) {
    double a = std::atan2(z.imag(), z.real());
    if (a <= 0.0) a += 2.0 * kPi;
    return a;
}

cplx ln0(cplx z) { return cplx(std::log(std::abs(z)), arg0(z)); }

/// Locate the 4-node interpolation window around k on a strictly increasing
/// grid: the two nodes on each side where possible, clamped at the ends.
std::size_t window_start(const std::vector<double>& ks, double k) {
    const std::size_t n = ks.size();
    auto it = std::upper_bound(ks.begin(), ks.end(), k);
    std::size_t hi = static_cast<std::size_t>(it - ks.begin()); // first node > k
    std::size_t start = (hi >= 2) ? hi - 2 : 0;
    if (start + 4 > n) start = n - 4;
    return start;
}

/// Cubic Lagrange value through four (x, f) pairs.
template <typename T>
T lagrange4(const double* xs, const T* fs, double z) {
    T acc{};
    for (int i = 0; i < 4; ++i) {
        double w = 1.0;
        for (int j = 0; j < 4; ++j)
            if (j != i) w *= (z - xs[j]) / (xs[i] - xs[j]);
        acc += fs[i] * w;
    }
    return acc;
}

void require_line(const SpectralLine& line, const char* who) {
    if (line.k.size() < 5)
        throw ValidationError(std::string(who) + ": spectral line has fewer than 5 nodes");
}

void require_cover(const SpectralLine& line, double k0, const char* who) {
    if (k0 < line.k.front() - 1e-12 || k0 > line.k_max + 1e-12) {
        std::ostringstream os;
        os << who << ": stationary point k0 = " << k0
           << " lies outside the sampled grid [" << line.k.front() << ", "
           << line.k_max << "]";
        throw ValidationError(os.str());
    }
}

/// The validity sector needs |r1| < 1 on [k0, k_max].  Node values at or
/// above 1 make ln(1 - |r1|^2) undefined there.
void require_subunit(const SpectralLine& line, double k0, const char* who) {
    for (std::size_t i = 0; i < line.k.size(); ++i) {
        if (line.k[i] < k0 - 1e-12) continue;
        if (!(line.abs2[i] < 1.0)) {
            std::ostringstream os;
            os << who << ": sector violation, |r1(" << line.k[i]
               << ")| >= 1 on the ray [k0, k_max] with k0 = " << k0;
            throw AssumptionError(os.str());
        }
    }
}

double zeta_to_k0(double zeta, const char* who) {
    if (!(zeta > 0.0))
        throw ValidationError(std::string(who) + ": ray speed zeta must be positive");
    return zeta / 2.0;
}

} // namespace

double nu_of(double abs_q2) {
    if (!(abs_q2 >= 0.0))
        throw ValidationError("nu_of: |q|^2 must be a nonnegative real number");
    if (abs_q2 >= 1.0) {
        std::ostringstream os;
        os << "nu_of: sector violation, |q|^2 = " << abs_q2
           << " >= 1 leaves the exponent nu undefined";
        throw AssumptionError(os.str());
    }
    return -std::log1p(-abs_q2) / (2.0 * kPi);
}

cplx interp_r1(const SpectralLine& line, double k) {
    require_line(line, "interp_r1");
    std::size_t s = window_start(line.k, k);
    return lagrange4(line.k.data() + s, line.r1.data() + s, k);
}

double interp_ell_prime(const SpectralLine& line, double k) {
    require_line(line, "interp_ell_prime");
    std::size_t s = window_start(line.k, k);
    double vals[4];
    for (int i = 0; i < 4; ++i) {
        vals[i] = line.ell_prime[s + i];
        if (!std::isfinite(vals[i])) {
            std::ostringstream os;
            os << "interp_ell_prime: sector violation, ell'(s) undefined at node k = "
               << line.k[s + i] << " (|r1| >= 1)";
            throw AssumptionError(os.str());
        }
    }
    return lagrange4(line.k.data() + s, vals, k);
}

namespace {

/// ell(s) = ln(1 - |r1(s)|^2) interpolated from node values.
double interp_ell(const SpectralLine& line, double k) {
    std::size_t s = window_start(line.k, k);
    double vals[4];
    for (int i = 0; i < 4; ++i) {
        double a2 = line.abs2[s + i];
        if (!(a2 < 1.0)) {
            std::ostringstream os;
            os << "delta1: sector violation, |r1| >= 1 at node k = " << line.k[s + i];
            throw AssumptionError(os.str());
        }
        vals[i] = std::log1p(-a2);
    }
    return lagrange4(line.k.data() + s, vals, k);
}

} // namespace

cplx chi1(double zeta, cplx k, const SpectralLine& line, double quad_tol) {
    const char* who = "chi1";
    require_line(line, who);
    double k0 = zeta_to_k0(zeta, who);
    require_cover(line, k0, who);
    require_subunit(line, k0, who);

    const double kmax = line.k_max;
    const bool on_axis = (k.imag() == 0.0);
    const bool at_k0 = on_axis && std::abs(k.real() - k0) <= 1e-12 * std::max(1.0, k0);
    if (on_axis && !at_k0 && k.real() > k0) {
        std::ostringstream os;
        os << who << ": k = " << k.real() << " lies on the branch cut [k0, inf), k0 = " << k0;
        throw ValidationError(os.str());
    }

    const cplx inv_2pii = cplx(0.0, -1.0) / (2.0 * kPi); // 1/(2 pi i)

    if (at_k0) {
        // ln0(k0 - s) = ln|s - k0| + i pi for s > k0: split into a
        // log-singular real part and a smooth imaginary part.
        auto gp = [&](double s) { return cplx(interp_ell_prime(line, s), 0.0); };
        QuadResult lg = log_singular_quad(gp, k0, kmax, quad_tol);
        QuadResult sm = adaptive_quad(gp, k0, kmax, quad_tol);
        return inv_2pii * (lg.value + cplx(0.0, kPi) * sm.value);
    }

    auto f = [&](double s) { return ln0(k - s) * interp_ell_prime(line, s); };
    QuadResult q = adaptive_quad(f, k0, kmax, quad_tol);
    return inv_2pii * q.value;
}

cplx delta1(double zeta, cplx k, const SpectralLine& line, double quad_tol) {
    const char* who = "delta1";
    require_line(line, who);
    double k0 = zeta_to_k0(zeta, who);
    require_cover(line, k0, who);
    require_subunit(line, k0, who);

    if (k.imag() == 0.0 && k.real() >= k0 - 1e-12 * std::max(1.0, k0)) {
        std::ostringstream os;
        os << who << ": k = " << k.real()
           << " lies on the branch cut [k0, inf) (k0 = " << k0
           << "); evaluate at k = s +- i eps for boundary values";
        throw ValidationError(os.str());
    }

    auto f = [&](double s) { return cplx(interp_ell(line, s), 0.0) / (s - k); };
    QuadResult q = adaptive_quad(f, k0, line.k_max, quad_tol);
    const cplx inv_2pii = cplx(0.0, -1.0) / (2.0 * kPi);
    return std::exp(inv_2pii * q.value);
}

cplx delta1_jump_ratio(double zeta, double s0, const SpectralLine& line,
                       double eps0, double quad_tol) {
    const char* who = "delta1_jump_ratio";
    double k0 = zeta_to_k0(zeta, who);
    if (!(s0 > k0) || s0 > line.k_max) {
        std::ostringstream os;
        os << who << ": cut point s0 = " << s0 << " must lie in (k0, k_max] = ("
           << k0 << ", " << line.k_max << "]";
        throw ValidationError(os.str());
    }
    if (!(eps0 > 0.0))
        throw ValidationError("delta1_jump_ratio: eps0 must be positive");

    // Ratios on the ladder eps = {4, 2, 1} * eps0, then solve the 3x3 system
    // R(eps) = c0 + c1 eps ln eps + c2 eps for c0 = R(0+).
    double eps[3] = {4.0 * eps0, 2.0 * eps0, eps0};
    cplx rows[3];
    for (int i = 0; i < 3; ++i) {
        cplx kp(s0, eps[i]);
        cplx km(s0, -eps[i]);
        rows[i] = delta1(zeta, kp, line, quad_tol) / delta1(zeta, km, line, quad_tol);
    }
    double m[3][3];
    for (int i = 0; i < 3; ++i) {
        m[i][0] = 1.0;
        m[i][1] = eps[i] * std::log(eps[i]);
        m[i][2] = eps[i];
    }
    double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
               - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
               + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    // Cramer's rule for the first unknown (the eps -> 0 limit).
    cplx det0 = rows[0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
              - cplx(m[0][1]) * (rows[1] * m[2][2] - cplx(m[1][2]) * rows[2])
              + cplx(m[0][2]) * (rows[1] * m[2][1] - cplx(m[1][1]) * rows[2]);
    return det0 / det;
}

double tail_integral(const SpectralLine& line, double zeta, double quad_tol) {
    const char* who = "tail_integral";
    require_line(line, who);
    double k0 = zeta_to_k0(zeta, who);
    require_cover(line, k0, who);
    require_subunit(line, k0, who);

    const double kmax = line.k_max;
    auto gp = [&](double s) { return cplx(interp_ell_prime(line, s), 0.0); };
    QuadResult lg = log_singular_quad(gp, k0, kmax, quad_tol);

    // |s - omega k0|^2 = (s + k0/2)^2 + 3 k0^2/4, bounded below by
    // (k0 sqrt(3)/2)^2 on the ray, so this factor is smooth.
    auto f2 = [&](double s) {
        double d2 = (s + 0.5 * k0) * (s + 0.5 * k0) + 0.75 * k0 * k0;
        return cplx(0.5 * std::log(d2) * interp_ell_prime(line, s), 0.0);
    };
    QuadResult sm = adaptive_quad(f2, k0, kmax, quad_tol);
    return (lg.value.real() - sm.value.real()) / kPi;
}

AsymptoticParams asym_params(const SpectralLine& line, double zeta,
                             const AsymConfig& cfg) {
    const char* who = "asym_params";
    require_line(line, who);
    double k0 = zeta_to_k0(zeta, who);

    AsymptoticParams p;
    p.zeta = zeta;
    p.k0 = k0;
    p.zeta0 = compute_zeta0(line);
    if (zeta <= p.zeta0 + cfg.margin) {
        std::ostringstream os;
        os << who << ": sector violation, ray speed zeta = " << zeta
           << " is not above the threshold zeta0 + margin = " << p.zeta0 << " + "
           << cfg.margin << "; the oscillatory form does not apply there";
        throw AssumptionError(os.str());
    }
    require_cover(line, k0, who);

    p.q = interp_r1(line, k0);
    double abs_q2 = std::norm(p.q);
    p.nu = nu_of(abs_q2);
    p.arg_q = std::arg(p.q);
    if (p.nu > 0.0) {
        p.gamma_arg = gamma_polar(p.nu).arg;
    } else {
        p.gamma_arg = 0.0; // amplitude vanishes with nu; the phase is moot
    }
    p.tail = tail_integral(line, zeta, cfg.quad_tol);
    p.valid = (std::sqrt(abs_q2) <= 1.0 - cfg.eps_q) && std::isfinite(p.tail);
    return p;
}

UAsymValue u_asym(const AsymptoticParams& params, double x, double t) {
    if (!(t >= 2.0))
        throw ValidationError("u_asym: the long-time form needs t >= 2");
    double ray = x / t;
    if (std::abs(ray - params.zeta) > 1e-12 * std::max(1.0, std::abs(params.zeta))) {
        std::ostringstream os;
        os << "u_asym: (x, t) = (" << x << ", " << t << ") sits on ray x/t = "
           << ray << ", but the parameters were built for zeta = " << params.zeta;
        throw ValidationError(os.str());
    }
    const double k0 = params.k0;
    UAsymValue out;
    out.envelope = std::pow(3.0, 1.25) * k0 * std::sqrt(params.nu / (2.0 * t));
    out.phase = 19.0 * kPi / 12.0
              + params.nu * std::log(6.0 * kSqrt3 * t * k0 * k0)
              - kSqrt3 * k0 * k0 * t
              - params.arg_q
              - params.gamma_arg
              + params.tail;
    out.u = -out.envelope * std::sin(out.phase);
    return out;
}

} // namespace bsq
