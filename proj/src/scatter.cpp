#include "bsq/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "bsq/errors.hpp"
#include "bsq/lax.hpp"
#include "bsq/quadrature.hpp"

namespace bsq {

namespace {

namespace ode = boost::numeric::odeint;
using state_type = std::vector<cplx>;

constexpr double kBlowupThreshold = 1e12;
constexpr double kDivisionThreshold = 1e-12;
constexpr double kEstErrorFactor = 50.0;
constexpr double kPi = 3.1415926535897932384626433832795029;

std::string fmt_cplx(cplx z) {
    std::ostringstream os;
    if (z.imag() == 0.0) {
        os << z.real();
    } else {
        os << "(" << z.real() << (z.imag() < 0 ? " - " : " + ")
           << std::abs(z.imag()) << "i)";
    }
    return os.str();
}

/// Value of the Lagrange quadratic through (xs[i], fs[i]) at x = 0.
cplx extrapolate_to_zero(const double* xs, const cplx* fs, int n) {
    cplx acc(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
        double w = 1.0;
        for (int m = 0; m < n; ++m) {
            if (m == j) continue;
            w *= (0.0 - xs[m]) / (xs[j] - xs[m]);
        }
        acc += w * fs[j];
    }
    return acc;
}

/// Derivative weights of the Lagrange polynomial through xs[0..n) at z.
void lagrange_deriv_weights(const double* xs, int n, double z, double* w) {
    for (int j = 0; j < n; ++j) {
        double denom = 1.0;
        for (int m = 0; m < n; ++m)
            if (m != j) denom *= xs[j] - xs[m];
        double num = 0.0;
        for (int m = 0; m < n; ++m) {
            if (m == j) continue;
            double prod = 1.0;
            for (int q = 0; q < n; ++q)
                if (q != j && q != m) prod *= z - xs[q];
            num += prod;
        }
        w[j] = num / denom;
    }
}

struct SweepSpec {
    const Profile* prof = nullptr;
    cplx k;
    Vec3 l;
    std::vector<int> cols0; ///< 0-based column indices (columns mode)
    ScatterMode mode = ScatterMode::columns;
    bool adjoint = false;
};

/// Columns mode.  Forward: normalized eigenfunction columns
/// Y_j' = (L - l_j) Y_j + ones * (t . Y_j) plus the scattering accumulator
/// rows 1-2, dA_{aj} = e^{-x(l_a - l_j)} (t . Y_j).  Adjoint: the transposed
/// system Z_j' = -(L - l_j) Z_j - t * sum(Z_j) with accumulator
/// dA_{aj} = -e^{x(l_a - l_j)} t_a sum(Z_j).
void rhs_columns(const SweepSpec& sp, const state_type& y, state_type& dy, double x) {
    const Vec3 t = u_row(*sp.prof, x, sp.k);
    const int nc = static_cast<int>(sp.cols0.size());
    const int acc0 = 3 * nc;
    for (int c = 0; c < nc; ++c) {
        const int j = sp.cols0[c];
        const cplx* yc = &y[3 * c];
        cplx* dc = &dy[3 * c];
        if (!sp.adjoint) {
            const cplx scal = t[0] * yc[0] + t[1] * yc[1] + t[2] * yc[2];
            for (int i = 0; i < 3; ++i)
                dc[i] = (sp.l[i] - sp.l[j]) * yc[i] + scal;
            for (int a = 0; a < 2; ++a)
                dy[acc0 + 2 * c + a] = std::exp(-x * (sp.l[a] - sp.l[j])) * scal;
        } else {
            const cplx colsum = yc[0] + yc[1] + yc[2];
            for (int i = 0; i < 3; ++i)
                dc[i] = -(sp.l[i] - sp.l[j]) * yc[i] - t[i] * colsum;
            for (int a = 0; a < 2; ++a)
                dy[acc0 + 2 * c + a] = -std::exp(x * (sp.l[a] - sp.l[j])) * t[a] * colsum;
        }
    }
}

/// Full-matrix mode.  Forward: W' = E .* (ones t^T) W with
/// E_{im} = e^{-x(l_i - l_m)}; the end value W(-X_inf) is s.  Adjoint:
/// V' = -[E' .* (t ones^T)] V with E'_{im} = e^{x(l_i - l_m)}; the end value
/// is sA.  (V^T W)' = 0 exactly, which is the source of the adjoint identity.
void rhs_full(const SweepSpec& sp, const state_type& y, state_type& dy, double x) {
    const Vec3 t = u_row(*sp.prof, x, sp.k);
    const double sgn = sp.adjoint ? 1.0 : -1.0;
    cplx e[3][3];
    for (int i = 0; i < 3; ++i)
        for (int m = 0; m < 3; ++m)
            e[i][m] = (i == m) ? cplx(1.0, 0.0)
                               : std::exp(sgn * x * (sp.l[i] - sp.l[m]));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            cplx acc(0.0, 0.0);
            if (!sp.adjoint) {
                for (int m = 0; m < 3; ++m) acc += e[i][m] * t[m] * y[3 * m + j];
            } else {
                for (int m = 0; m < 3; ++m) acc += e[i][m] * y[3 * m + j];
                acc *= -t[i];
            }
            dy[3 * i + j] = acc;
        }
    }
}

/// L1 bound on the potential row-sum norm, (I1 + |k| I2)/|k|^2 with
/// I1 = int |m1|, I2 = int |m2|; feeds the Gronwall non-growth assertion.
double gronwall_exponent(const Profile& p, cplx k, double x_inf) {
    const auto abs_m1 = [&p](double x) {
        return cplx(std::abs(-p.v0(x) - p.u0x(x)), 0.0);
    };
    const auto abs_m2 = [&p](double x) { return cplx(std::abs(2.0 * p.u0(x)), 0.0); };
    const double i1 = adaptive_quad(abs_m1, -x_inf, x_inf, 1e-7).value.real();
    const double i2 = adaptive_quad(abs_m2, -x_inf, x_inf, 1e-7).value.real();
    const double ak = std::abs(k);
    return (i1 + ak * i2) / (ak * ak);
}

SweepResult run_sweep(const Profile& p, cplx k, std::vector<int> cols,
                      ScatterMode mode, const SweepOptions& opt) {
    if (k == cplx(0.0, 0.0) || !std::isfinite(k.real()) || !std::isfinite(k.imag()))
        throw ValidationError("integrate_X: spectral parameter must be finite and nonzero");
    if (!(opt.tol > 0.0))
        throw ValidationError("integrate_X: tolerance must be positive");

    SweepSpec sp;
    sp.prof = &p;
    sp.k = k;
    sp.l = lvec(k);
    sp.mode = mode;
    sp.adjoint = opt.adjoint;

    const double x_inf = (opt.x_inf_override > 0.0)
                             ? opt.x_inf_override
                             : effective_support(p, opt.support_eps);

    // Dominant kernel exponent, used for gating and error reporting.
    double max_re = 0.0;
    int max_i = 0, max_j = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double re = (sp.l[i] - sp.l[j]).real();
            if (re > max_re) {
                max_re = re;
                max_i = i;
                max_j = j;
            }
        }
    }

    int state_dim = 0;
    if (mode == ScatterMode::columns) {
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        if (cols.empty())
            throw ValidationError("integrate_X: columns mode needs a nonempty column set");
        for (int c : cols) {
            if (c == 3)
                throw ValidationError(
                    "integrate_X: column 3 is rejected in columns mode: its Volterra "
                    "kernel grows like exp((3/2) Re k (x' - x)) and the integral is only "
                    "conditionally computable; use full mode on super-exponential data");
            if (c < 1 || c > 2)
                throw ValidationError("integrate_X: columns must come from {1, 2}");
        }
        sp.cols0.reserve(cols.size());
        for (int c : cols) sp.cols0.push_back(c - 1);
        state_dim = 3 * static_cast<int>(cols.size()) + 2 * static_cast<int>(cols.size());
    } else {
        if (p.decay_class != DecayClass::super_exponential)
            throw ValidationError(
                "integrate_X: full mode requires super-exponential decay; exponential "
                "tails make the growing kernels only conditionally integrable");
        if (max_re * x_inf > 25.0) {
            std::ostringstream os;
            os << "integrate_X: full-mode dynamic range gate exceeded: max |Re(l_i - l_j)| * "
                  "X_inf = "
               << max_re * x_inf << " > 25 (k = " << fmt_cplx(k) << ", X_inf = " << x_inf
               << ")";
            throw ValidationError(os.str());
        }
        state_dim = 9;
    }

    // Gronwall bound for the eigenfunction columns at real k (log form: the
    // bound 1 + B e^B <= (1 + B) e^B can exceed double range at small |k|).
    const bool real_k = (k.imag() == 0.0);
    double growth_log_bound = std::numeric_limits<double>::infinity();
    if (mode == ScatterMode::columns && real_k && opt.growth_assert) {
        const double b = gronwall_exponent(p, k, x_inf);
        growth_log_bound = b + std::log1p(b) + 1e-6;
    }

    state_type y(state_dim, cplx(0.0, 0.0));
    if (mode == ScatterMode::columns) {
        for (std::size_t c = 0; c < sp.cols0.size(); ++c) y[3 * c + sp.cols0[c]] = 1.0;
    } else {
        for (int i = 0; i < 3; ++i) y[3 * i + i] = 1.0;
    }

    long n_rhs = 0;
    const auto sys = [&sp, &n_rhs](const state_type& yy, state_type& dyy, double xx) {
        ++n_rhs;
        if (sp.mode == ScatterMode::columns)
            rhs_columns(sp, yy, dyy, xx);
        else
            rhs_full(sp, yy, dyy, xx);
    };

    using stepper_t = ode::runge_kutta_dopri5<state_type>;
    auto ctrl = ode::make_controlled<stepper_t>(opt.tol * 1e-2, opt.tol);

    const double x_lo = -x_inf;
    double x = x_inf;
    double dt = -std::min({0.05, 0.5 * x_inf, 0.5 / (1.0 + std::abs(k))});
    long n_steps = 0;
    const int n_col_entries = (mode == ScatterMode::columns)
                                  ? 3 * static_cast<int>(sp.cols0.size())
                                  : 9;

    while (x - x_lo > 1e-12) {
        if (x + dt < x_lo) dt = x_lo - x;
        int fails = 0;
        while (ctrl.try_step(sys, y, x, dt) == ode::fail) {
            ++fails;
            if (fails > 400 || std::abs(dt) < 1e-15 * std::max(1.0, std::abs(x))) {
                std::ostringstream os;
                os << "integrate_X: step-size underflow (stiffness) at x = " << x
                   << ", k = " << fmt_cplx(k);
                throw StabilityError(os.str());
            }
        }
        ++n_steps;
        if (n_steps > 5000000)
            throw StabilityError("integrate_X: step budget exceeded at k = " + fmt_cplx(k));

        double sup_cols = 0.0, sup_all = 0.0;
        for (int i = 0; i < state_dim; ++i) {
            const double a = std::abs(y[i]);
            sup_all = std::max(sup_all, a);
            if (i < n_col_entries) sup_cols = std::max(sup_cols, a);
        }
        if (!(sup_all < kBlowupThreshold)) {
            std::ostringstream os;
            os << "integrate_X: state norm exceeded 1e12 at x = " << x
               << " (k = " << fmt_cplx(k) << "); dominant kernel exponent Re(l_"
               << max_i + 1 << " - l_" << max_j + 1 << ") = " << max_re;
            throw StabilityError(os.str());
        }
        if (std::log(std::max(sup_cols, 1e-300)) > growth_log_bound) {
            std::ostringstream os;
            os << "integrate_X: non-growth bound violated at x = " << x
               << " (k = " << fmt_cplx(k) << "): column sup-norm " << sup_cols
               << " exceeds the Gronwall bound";
            throw StabilityError(os.str());
        }
    }

    SweepResult res;
    res.cols = cols;
    res.mode = mode;
    res.adjoint = opt.adjoint;
    res.x_inf = x_inf;
    res.n_steps = n_steps;
    res.n_rhs = n_rhs;
    res.converged = true;
    res.s = Complex3x3::identity();
    if (mode == ScatterMode::columns) {
        const int acc0 = 3 * static_cast<int>(sp.cols0.size());
        for (std::size_t c = 0; c < sp.cols0.size(); ++c) {
            res.end_columns.push_back(Vec3{y[3 * c], y[3 * c + 1], y[3 * c + 2]});
            for (int a = 0; a < 2; ++a)
                res.s(a, sp.cols0[c]) += y[acc0 + 2 * c + a];
        }
    } else {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) res.s(i, j) = y[3 * i + j];
        for (int j = 0; j < 3; ++j)
            res.end_columns.push_back(Vec3{res.s(0, j), res.s(1, j), res.s(2, j)});
        const double det_err = std::abs(res.s.det() - cplx(1.0, 0.0));
        if (det_err > 1e-6) {
            std::ostringstream os;
            os << "integrate_X: full-mode determinant drift |det s - 1| = " << det_err
               << " at k = " << fmt_cplx(k) << " (traceless generator violated)";
            throw StabilityError(os.str());
        }
    }
    return res;
}

ScatterSample make_sample(const Profile& p, cplx k, ScatterMode mode,
                          const SweepOptions& opt) {
    SweepResult sw = run_sweep(p, k, {1, 2}, mode, opt);
    ScatterSample sample;
    sample.k = k;
    sample.s11 = sw.s(0, 0);
    sample.s12 = sw.s(0, 1);
    sample.mode = mode;
    sample.converged = sw.converged;
    if (mode == ScatterMode::full) sample.full_s = sw.s;
    sample.est_error = kEstErrorFactor * opt.tol *
                       std::max({1.0, std::abs(sample.s11), std::abs(sample.s12)});
    return sample;
}

/// Domain gate shared by s_entries / sA_entries: |k| >= k_min and k inside
/// the closed sector [sector_lo, sector_hi] (angles in [0, 2pi)).
void check_sector(cplx k, double k_min, double lo, double hi, const char* who) {
    if (std::abs(k) < k_min) {
        std::ostringstream os;
        os << who << ": |k| = " << std::abs(k) << " is below k_min = " << k_min
           << " (s11 carries a double pole at k = 0; use the origin ladder instead)";
        throw ValidationError(os.str());
    }
    double phi = std::arg(k);
    if (phi < -1e-12) phi += 2.0 * kPi;
    if (phi < lo - 1e-12 || phi > hi + 1e-12) {
        std::ostringstream os;
        os << who << ": k = " << fmt_cplx(k) << " lies outside the admissible sector arg k in ["
           << lo << ", " << hi << "]";
        throw ValidationError(os.str());
    }
}

cplx reflection_impl(const Profile& p, double k, ReflectionKind which,
                     const SweepOptions& opt, double k_min, double* est_error) {
    ScatterSample sample;
    if (which == ReflectionKind::r1) {
        if (!(k > 0.0))
            throw ValidationError("reflection: r1 is defined on the positive half-line");
        check_sector(cplx(k, 0.0), k_min, 0.0, kPi / 3.0, "s_entries");
        sample = make_sample(p, cplx(k, 0.0), ScatterMode::columns, opt);
    } else {
        if (!(k < 0.0))
            throw ValidationError("reflection: r2 is defined on the negative half-line");
        check_sector(cplx(k, 0.0), k_min, kPi, 4.0 * kPi / 3.0, "sA_entries");
        SweepOptions a = opt;
        a.adjoint = true;
        sample = make_sample(p, cplx(k, 0.0), ScatterMode::columns, a);
    }
    const double den = std::abs(sample.s11);
    if (den < kDivisionThreshold) {
        std::ostringstream os;
        os << "reflection: |s11| = " << den << " at k = " << k
           << " is below the division threshold 1e-12 - near-zero of s11, possible "
              "soliton in the data";
        throw AssumptionError(os.str());
    }
    const cplx r = sample.s12 / sample.s11;
    if (est_error != nullptr)
        *est_error = sample.est_error * (1.0 + std::abs(r)) / den;
    return r;
}

/// Captured per-node failure for deterministic rethrow out of parallel loops.
struct NodeError {
    int code = 0;
    std::string msg;
};

[[noreturn]] void rethrow(int code, const std::string& msg) {
    switch (code) {
        case 3: throw StabilityError(msg);
        case 4: throw AssumptionError(msg);
        default: throw ValidationError(msg);
    }
}

} // namespace

SweepResult integrate_X(const Profile& p, cplx k, const std::vector<int>& cols,
                        ScatterMode mode, const SweepOptions& opt) {
    SweepOptions o = opt;
    o.adjoint = false;
    return run_sweep(p, k, cols, mode, o);
}

SweepResult integrate_X(const Profile& p, cplx k, const std::vector<int>& cols,
                        ScatterMode mode, double tol) {
    SweepOptions o;
    o.tol = tol;
    return run_sweep(p, k, cols, mode, o);
}

SweepResult integrate_XA(const Profile& p, cplx k, const std::vector<int>& cols,
                         ScatterMode mode, const SweepOptions& opt) {
    SweepOptions o = opt;
    o.adjoint = true;
    return run_sweep(p, k, cols, mode, o);
}

ScatterSample s_entries(const Profile& p, cplx k, ScatterMode mode, double tol,
                        double k_min) {
    check_sector(k, k_min, 0.0, kPi / 3.0, "s_entries");
    SweepOptions opt;
    opt.tol = tol;
    return make_sample(p, k, mode, opt);
}

ScatterSample sA_entries(const Profile& p, cplx k, ScatterMode mode, double tol,
                         double k_min) {
    check_sector(k, k_min, kPi, 4.0 * kPi / 3.0, "sA_entries");
    SweepOptions opt;
    opt.tol = tol;
    opt.adjoint = true;
    return make_sample(p, k, mode, opt);
}

cplx reflection(const Profile& p, double k, ReflectionKind which, double tol,
                double* est_error) {
    SweepOptions opt;
    opt.tol = tol;
    return reflection_impl(p, k, which, opt, 1e-3, est_error);
}

SpectralLine spectral_line(const Profile& p, const std::vector<double>& k_grid,
                           const LineConfig& cfg) {
    const std::size_t n = k_grid.size();
    if (n < 5)
        throw ValidationError("spectral_line: need at least 5 grid nodes for the "
                              "derivative stencils");
    for (std::size_t i = 0; i < n; ++i) {
        if (k_grid[i] < cfg.k_min) {
            std::ostringstream os;
            os << "spectral_line: node " << i << " (k = " << k_grid[i]
               << ") lies below k_min = " << cfg.k_min;
            throw ValidationError(os.str());
        }
        if (i > 0 && !(k_grid[i] > k_grid[i - 1]))
            throw ValidationError("spectral_line: k_grid must be strictly increasing");
    }

    SpectralLine line;
    line.k = k_grid;
    line.r1.assign(n, cplx(0.0, 0.0));
    line.abs2.assign(n, 0.0);
    line.ell_prime.assign(n, 0.0);
    line.est_error.assign(n, 0.0);
    line.k_max = k_grid.back();

    // One support computation shared by every node.
    const double x_inf = effective_support(p, 1e-14);
    std::vector<NodeError> errors(n);

    parallel_for(static_cast<long>(n), cfg.exec, [&](long i) {
        try {
            SweepOptions opt;
            opt.tol = cfg.tol;
            opt.x_inf_override = x_inf;
            double err = 0.0;
            const cplx r = reflection_impl(p, k_grid[i], ReflectionKind::r1, opt,
                                           cfg.k_min, &err);
            line.r1[i] = r;
            line.abs2[i] = std::norm(r);
            line.est_error[i] = err;
        } catch (const Error& e) {
            errors[i] = {e.exit_code(), e.what()};
        } catch (const std::exception& e) {
            errors[i] = {3, e.what()};
        }
    });

    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i].code != 0) {
            std::ostringstream os;
            os << "spectral_line: node " << i << " (k = " << k_grid[i]
               << ") failed: " << errors[i].msg;
            rethrow(errors[i].code, os.str());
        }
    }

    // ell(k) = ln(1 - |r1|^2), differentiated with 5-point Lagrange stencils.
    std::vector<double> ell(n);
    for (std::size_t i = 0; i < n; ++i)
        ell[i] = (line.abs2[i] < 1.0) ? std::log1p(-line.abs2[i])
                                      : std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = (i >= 2) ? i - 2 : 0;
        lo = std::min(lo, n - 5);
        double w[5];
        lagrange_deriv_weights(&k_grid[lo], 5, k_grid[i], w);
        double d = 0.0;
        for (int j = 0; j < 5; ++j) d += w[j] * ell[lo + j];
        line.ell_prime[i] = d;
    }

    line.r1_origin = extrapolate_to_zero(&k_grid[0], &line.r1[0], 3);
    line.origin_gap = std::abs(line.r1_origin - OMEGA);
    return line;
}

double compute_zeta0(const SpectralLine& line) {
    const std::size_t n = line.k.size();
    if (n < 2) throw ValidationError("compute_zeta0: line needs at least 2 nodes");
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = std::sqrt(line.abs2[i]) - 1.0;
    if (f[n - 1] >= 0.0) {
        std::ostringstream os;
        os << "compute_zeta0: |r1| = " << f[n - 1] + 1.0 << " at the top node k = "
           << line.k[n - 1] << "; the grid stops before the reflection decays below 1";
        throw ValidationError(os.str());
    }
    for (std::size_t ii = n - 1; ii-- > 0;) {
        if (f[ii] < 0.0) continue;
        // Crossing inside [k_ii, k_ii+1]: bisect the linear interpolant
        // (ties toward larger k because the scan comes from the top).
        double a = line.k[ii], b = line.k[ii + 1];
        const double fa = f[ii], fb = f[ii + 1];
        if (fa == 0.0) return 2.0 * a;
        while (b - a > 1e-8) {
            const double m = 0.5 * (a + b);
            const double fm = fa + (fb - fa) * (m - line.k[ii]) /
                                       (line.k[ii + 1] - line.k[ii]);
            if (fm >= 0.0)
                a = m;
            else
                b = m;
        }
        return 2.0 * 0.5 * (a + b);
    }
    return 0.0;
}

OriginLimits origin_limits(const Profile& p, double k_min, double tol) {
    SweepOptions opt;
    opt.tol = tol;
    const double ks[3] = {4.0 * k_min, 2.0 * k_min, k_min};
    cplx r1s[3], r2s[3], gs[3];
    for (int i = 0; i < 3; ++i) {
        const ScatterSample s = s_entries(p, cplx(ks[i], 0.0), ScatterMode::columns,
                                          tol, k_min);
        if (std::abs(s.s11) < kDivisionThreshold)
            throw AssumptionError("origin_limits: near-zero of s11 on the ladder");
        r1s[i] = s.s12 / s.s11;
        gs[i] = ks[i] * ks[i] * s.s11;
        ScatterSample sa = sA_entries(p, cplx(-ks[i], 0.0), ScatterMode::columns,
                                      tol, k_min);
        if (std::abs(sa.s11) < kDivisionThreshold)
            throw AssumptionError("origin_limits: near-zero of sA11 on the ladder");
        r2s[i] = sa.s12 / sa.s11;
    }
    OriginLimits out;
    out.r1_extrap = extrapolate_to_zero(ks, r1s, 3);
    out.r2_extrap = extrapolate_to_zero(ks, r2s, 3);
    out.k2s11_extrap = extrapolate_to_zero(ks, gs, 3);
    out.r1_gap = std::abs(out.r1_extrap - OMEGA);
    out.r2_gap = std::abs(out.r2_extrap - cplx(1.0, 0.0));
    out.k2s11_rungs = {gs[0], gs[1], gs[2]};
    out.k2s11_consistency =
        std::abs(out.k2s11_extrap - gs[2]) / std::max(std::abs(out.k2s11_extrap), 1e-300);
    return out;
}

AssumptionReport assumption_checks(const Profile& p, const AssumptionConfig& cfg) {
    if (cfg.n_radial < 2 || cfg.n_spokes < 2)
        throw ValidationError("assumption_checks: mesh needs at least 2 radii and 2 spokes");
    if (!(cfg.k_sector_max > cfg.k_min))
        throw ValidationError("assumption_checks: k_sector_max must exceed k_min");

    AssumptionReport rep;
    const double x_inf = effective_support(p, 1e-14);
    const long n_mesh = static_cast<long>(cfg.n_radial) * cfg.n_spokes;
    std::vector<double> abs_s11(n_mesh, 0.0), abs_sA11(n_mesh, 0.0);
    std::vector<cplx> mesh_k(n_mesh);
    std::vector<NodeError> errors(n_mesh);

    const double log_ratio = std::log(cfg.k_sector_max / cfg.k_min);
    for (long idx = 0; idx < n_mesh; ++idx) {
        const int a = static_cast<int>(idx / cfg.n_radial);
        const int g = static_cast<int>(idx % cfg.n_radial);
        const double theta = (kPi / 3.0) * a / (cfg.n_spokes - 1);
        const double r = cfg.k_min * std::exp(log_ratio * g / (cfg.n_radial - 1));
        mesh_k[idx] = std::polar(r, theta);
    }

    parallel_for(n_mesh, cfg.exec, [&](long idx) {
        try {
            SweepOptions opt;
            opt.tol = cfg.tol;
            opt.x_inf_override = x_inf;
            const SweepResult fw = integrate_X(p, mesh_k[idx], {1}, ScatterMode::columns, opt);
            abs_s11[idx] = std::abs(fw.s(0, 0));
            const SweepResult ad =
                integrate_XA(p, -mesh_k[idx], {1}, ScatterMode::columns, opt);
            abs_sA11[idx] = std::abs(ad.s(0, 0));
        } catch (const Error& e) {
            errors[idx] = {e.exit_code(), e.what()};
        } catch (const std::exception& e) {
            errors[idx] = {3, e.what()};
        }
    });

    bool unstable = false;
    std::ostringstream diag;
    rep.min_abs_s11_D1 = std::numeric_limits<double>::infinity();
    rep.min_abs_sA11_D4 = std::numeric_limits<double>::infinity();
    for (long idx = 0; idx < n_mesh; ++idx) {
        if (errors[idx].code != 0) {
            if (!unstable)
                diag << "sector sweep failed at k = " << fmt_cplx(mesh_k[idx]) << ": "
                     << errors[idx].msg;
            unstable = true;
            continue;
        }
        if (abs_s11[idx] < rep.min_abs_s11_D1) {
            rep.min_abs_s11_D1 = abs_s11[idx];
            rep.argmin_k_D1 = mesh_k[idx];
        }
        if (abs_sA11[idx] < rep.min_abs_sA11_D4) {
            rep.min_abs_sA11_D4 = abs_sA11[idx];
            rep.argmin_k_D4 = -mesh_k[idx];
        }
    }

    const double sector_min = std::min(rep.min_abs_s11_D1, rep.min_abs_sA11_D4);
    if (unstable)
        rep.assumption1 = Verdict::inconclusive;
    else if (sector_min < cfg.a1_fail_threshold)
        rep.assumption1 = Verdict::fail;
    else if (sector_min > cfg.a1_pass_threshold)
        rep.assumption1 = Verdict::pass;
    else
        rep.assumption1 = Verdict::inconclusive;

    // Origin ladder for the nonzero-limit check, both sides.
    try {
        SweepOptions opt;
        opt.tol = cfg.tol;
        opt.x_inf_override = x_inf;
        const double ks[3] = {4.0 * cfg.k_min, 2.0 * cfg.k_min, cfg.k_min};
        cplx gf[3], ga[3];
        for (int i = 0; i < 3; ++i) {
            const SweepResult fw =
                integrate_X(p, cplx(ks[i], 0.0), {1, 2}, ScatterMode::columns, opt);
            gf[i] = ks[i] * ks[i] * fw.s(0, 0);
            const SweepResult ad =
                integrate_XA(p, cplx(-ks[i], 0.0), {1, 2}, ScatterMode::columns, opt);
            ga[i] = ks[i] * ks[i] * ad.s(0, 0);
        }
        rep.origin_limit_s = extrapolate_to_zero(ks, gf, 3);
        rep.origin_limit_sA = extrapolate_to_zero(ks, ga, 3);
        const double cons_f =
            std::abs(rep.origin_limit_s - gf[2]) / std::max(std::abs(rep.origin_limit_s), 1e-300);
        const double cons_a = std::abs(rep.origin_limit_sA - ga[2]) /
                              std::max(std::abs(rep.origin_limit_sA), 1e-300);
        rep.origin_consistency = std::max(cons_f, cons_a);
        const double mag =
            std::min(std::abs(rep.origin_limit_s), std::abs(rep.origin_limit_sA));
        if (mag <= cfg.a2_threshold)
            rep.assumption2 = Verdict::fail;
        else if (rep.origin_consistency < 0.5)
            rep.assumption2 = Verdict::pass;
        else
            rep.assumption2 = Verdict::inconclusive;
    } catch (const Error& e) {
        rep.assumption2 = Verdict::inconclusive;
        if (diag.tellp() > 0) diag << "; ";
        diag << "origin ladder failed: " << e.what();
    }

    rep.diagnostic = diag.str();
    return rep;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

} // namespace bsq
