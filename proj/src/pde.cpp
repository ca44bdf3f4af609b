#include "bsq/pde.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <sstream>

#include <fftw3.h>

#include "bsq/complex3.hpp"
#include "bsq/errors.hpp"

namespace bsq {
namespace {

constexpr double kSqrt3 = 1.7320508075688772935274463415058724;
constexpr int kGuardStride = 16; ///< real-space amplitude check cadence

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void validate_grid(double L, std::size_t N, const char* who) {
    if (!(L > 0.0))
        throw ValidationError(std::string(who) + ": domain half-length L must be positive");
    if (!is_pow2(N) || N < 16)
        throw ValidationError(std::string(who) + ": grid size N must be a power of two >= 16");
}

double cfl_bound(double L, std::size_t N, double c_cfl) {
    double dx_half = L / static_cast<double>(N);
    return c_cfl * dx_half * dx_half * kSqrt3;
}

/// Owns the FFTW plans and spectral state for one (L, N) grid.  All
/// pointwise work runs through the policy layer; transforms are serial, so
/// results are identical for any thread count.
class Engine {
public:
    Engine(double L, std::size_t N, bool dealias, Exec exec)
        : L_(L), N_(N), M_(N / 2 + 1), exec_(exec),
          xi_(M_), keep_(M_), uh_(M_), vh_(M_),
          real_buf_(static_cast<double*>(fftw_malloc(sizeof(double) * N))),
          cplx_buf_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * M_))) {
        validate_grid(L, N, "pde");
        if (real_buf_ == nullptr || cplx_buf_ == nullptr)
            throw StabilityError("pde: FFT buffer allocation failed");
        fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(N_), real_buf_, cplx_buf_, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_c2r_1d(static_cast<int>(N_), cplx_buf_, real_buf_, FFTW_ESTIMATE);
        const double pi = 3.1415926535897932384626433832795029;
        const std::size_t cutoff = N_ / 3;
        for (std::size_t m = 0; m < M_; ++m) {
            xi_[m] = pi * static_cast<double>(m) / L_;
            keep_[m] = (!dealias || m <= cutoff) ? 1.0 : 0.0;
        }
    }

    ~Engine() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(real_buf_);
        fftw_free(cplx_buf_);
    }

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    void load(const WaveField& f) {
        t_ = f.t;
        forward(f.u.data(), uh_.data());
        forward(f.v.data(), vh_.data());
    }

    WaveField unload() const {
        WaveField f;
        f.L = L_;
        f.N = N_;
        f.t = t_;
        f.u.resize(N_);
        f.v.resize(N_);
        inverse(uh_.data(), f.u.data());
        inverse(vh_.data(), f.v.data());
        return f;
    }

    /// Precompute the exact linear propagator entries for a step size.
    struct Prop {
        std::vector<double> c;  ///< cos(theta dt)
        std::vector<cplx> g12;  ///< i xi sin(theta dt)/theta
        std::vector<cplx> g21;  ///< (i xi^3/3) sin(theta dt)/theta
    };

    Prop make_prop(double dt) const {
        Prop pr;
        pr.c.resize(M_);
        pr.g12.resize(M_);
        pr.g21.resize(M_);
        for (std::size_t m = 0; m < M_; ++m) {
            double th = xi_[m] * xi_[m] / kSqrt3;
            double angle = th * dt;
            pr.c[m] = std::cos(angle);
            if (m == 0) {
                pr.g12[m] = cplx(0.0, 0.0);
                pr.g21[m] = cplx(0.0, 0.0);
            } else {
                double s = std::sin(angle);
                pr.g12[m] = cplx(0.0, kSqrt3 * s / xi_[m]);
                pr.g21[m] = cplx(0.0, xi_[m] * s / kSqrt3);
            }
        }
        return pr;
    }

    /// One integrating-factor RK4 step with propagators for dt/2 and dt.
    void step(double dt, const Prop& h, const Prop& f) {
        nonlinear(uh_, k1_);
        scratch_a_.resize(M_);
        scratch_b_.resize(M_);
        // Half-step propagation of (uh, vh): only the u-component feeds the
        // nonlinearity, so Ev is not needed until the final combination.
        parallel_for(M_, exec_, [&](std::size_t m) {
            scratch_a_[m] = h.c[m] * uh_[m] + h.g12[m] * vh_[m]; // Eu
        });
        parallel_for(M_, exec_, [&](std::size_t m) {
            scratch_b_[m] = scratch_a_[m] + (0.5 * dt) * h.g12[m] * k1_[m];
        });
        nonlinear(scratch_b_, k2_);
        // Stage 3 reads the u-component of E y1 + (dt/2) N(y2); the
        // nonlinear term has no u-component, so the argument is Eu itself.
        nonlinear(scratch_a_, k3_);
        parallel_for(M_, exec_, [&](std::size_t m) {
            scratch_b_[m] = f.c[m] * uh_[m] + f.g12[m] * vh_[m]; // E2u
        });
        scratch_c_.resize(M_);
        parallel_for(M_, exec_, [&](std::size_t m) {
            scratch_c_[m] = scratch_b_[m] + dt * h.g12[m] * k3_[m];
        });
        nonlinear(scratch_c_, k4_);
        parallel_for(M_, exec_, [&](std::size_t m) {
            cplx e2v = f.g21[m] * uh_[m] + f.c[m] * vh_[m];
            uh_[m] = scratch_b_[m]
                   + (dt / 6.0) * (f.g12[m] * k1_[m] + 2.0 * h.g12[m] * (k2_[m] + k3_[m]));
            vh_[m] = e2v
                   + (dt / 6.0) * (f.c[m] * k1_[m] + 2.0 * h.c[m] * (k2_[m] + k3_[m]) + k4_[m]);
        });
        t_ += dt;
    }

    /// Exact linear propagation by dt (any sign).
    void propagate(double dt) {
        Prop pr = make_prop(dt);
        parallel_for(M_, exec_, [&](std::size_t m) {
            cplx un = pr.c[m] * uh_[m] + pr.g12[m] * vh_[m];
            cplx vn = pr.g21[m] * uh_[m] + pr.c[m] * vh_[m];
            uh_[m] = un;
            vh_[m] = vn;
        });
        t_ += dt;
    }

    double mass_u() const { return uh_[0].real() * 2.0 * L_ / static_cast<double>(N_); }
    double mass_v() const { return vh_[0].real() * 2.0 * L_ / static_cast<double>(N_); }
    double time() const { return t_; }

    bool finite() const {
        double acc = 0.0;
        for (std::size_t m = 0; m < M_; ++m)
            acc += std::abs(uh_[m].real()) + std::abs(uh_[m].imag())
                 + std::abs(vh_[m].real()) + std::abs(vh_[m].imag());
        return std::isfinite(acc);
    }

    /// Max |u| on the grid (one inverse transform).
    double sup_u() const {
        std::vector<double> u(N_);
        inverse(uh_.data(), u.data());
        double s = 0.0;
        for (double x : u) s = std::max(s, std::abs(x));
        return s;
    }

    /// Peak |u-hat| in the last band below the dealiasing cutoff, relative
    /// to the global peak: the resolution adequacy gate.
    double spectrum_gate() const {
        const std::size_t cut = std::min(N_ / 3, M_ - 1);
        const std::size_t band = std::max<std::size_t>(2, cut / 20);
        const std::size_t lo = (cut > band) ? cut - band : 0;
        double peak = 0.0, tail = 0.0;
        for (std::size_t m = 0; m < M_; ++m) peak = std::max(peak, std::abs(uh_[m]));
        for (std::size_t m = lo; m <= cut; ++m) tail = std::max(tail, std::abs(uh_[m]));
        return (peak > 0.0) ? tail / peak : 0.0;
    }

    /// Largest wavenumber whose initial |u-hat| exceeds 1e-12 of the peak.
    double resolved_xi() const {
        double peak = 0.0;
        for (std::size_t m = 0; m < M_; ++m) peak = std::max(peak, std::abs(uh_[m]));
        double res = 0.0;
        for (std::size_t m = 0; m < M_; ++m)
            if (std::abs(uh_[m]) > 1e-12 * peak) res = xi_[m];
        return res;
    }

private:
    void forward(const double* src, cplx* dst) const {
        std::memcpy(real_buf_, src, sizeof(double) * N_);
        fftw_execute(fwd_);
        // std::complex<double> is array-compatible with double[2] by the
        // standard, so copy through double* to keep -Wclass-memaccess quiet.
        std::memcpy(reinterpret_cast<double*>(dst), cplx_buf_,
                    sizeof(fftw_complex) * M_);
    }

    void inverse(const cplx* src, double* dst) const {
        std::memcpy(cplx_buf_, reinterpret_cast<const double*>(src),
                    sizeof(fftw_complex) * M_);
        fftw_execute(bwd_);
        const double inv_n = 1.0 / static_cast<double>(N_);
        for (std::size_t j = 0; j < N_; ++j) dst[j] = real_buf_[j] * inv_n;
    }

    /// k = -(4/3) i xi mask (u^2)-hat from the given u-hat.
    void nonlinear(const std::vector<cplx>& uh_src, std::vector<cplx>& k_dst) {
        k_dst.resize(M_);
        std::memcpy(cplx_buf_, uh_src.data(), sizeof(fftw_complex) * M_);
        fftw_execute(bwd_);
        const double inv_n = 1.0 / static_cast<double>(N_);
        parallel_for(N_, exec_, [&](std::size_t j) {
            double uj = real_buf_[j] * inv_n;
            real_buf_[j] = uj * uj;
        });
        fftw_execute(fwd_);
        parallel_for(M_, exec_, [&](std::size_t m) {
            cplx w(cplx_buf_[m][0], cplx_buf_[m][1]);
            k_dst[m] = cplx(0.0, -(4.0 / 3.0) * xi_[m] * keep_[m]) * w;
        });
    }

    double L_;
    std::size_t N_, M_;
    Exec exec_;
    double t_ = 0.0;
    std::vector<double> xi_, keep_;
    std::vector<cplx> uh_, vh_;
    std::vector<cplx> k1_, k2_, k3_, k4_;
    std::vector<cplx> scratch_a_, scratch_b_, scratch_c_;
    double* real_buf_;
    fftw_complex* cplx_buf_;
    fftw_plan fwd_{}, bwd_{};
};

void validate_field(const WaveField& f, const char* who) {
    validate_grid(f.L, f.N, who);
    if (f.u.size() != f.N || f.v.size() != f.N)
        throw ValidationError(std::string(who) + ": field arrays must have length N");
}

} // namespace

WaveField sample_profile(const Profile& p, double L, std::size_t N) {
    validate_grid(L, N, "sample_profile");
    WaveField f;
    f.L = L;
    f.N = N;
    f.t = 0.0;
    f.u.resize(N);
    f.v.resize(N);
    for (std::size_t j = 0; j < N; ++j) {
        double x = -L + 2.0 * L * static_cast<double>(j) / static_cast<double>(N);
        f.u[j] = p.u0(x);
        f.v[j] = p.v0(x);
    }
    return f;
}

WaveField pde_step(const WaveField& f, double dt, bool dealias, Exec exec) {
    validate_field(f, "pde_step");
    double bound = cfl_bound(f.L, f.N, 0.5);
    if (!(dt > 0.0) || dt > bound * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "pde_step: dt = " << dt << " violates the resolved-rotation bound "
           << bound << " for L = " << f.L << ", N = " << f.N;
        throw ValidationError(os.str());
    }
    Engine e(f.L, f.N, dealias, exec);
    e.load(f);
    Engine::Prop half = e.make_prop(0.5 * dt);
    Engine::Prop full = e.make_prop(dt);
    e.step(dt, half, full);
    if (!e.finite())
        throw StabilityError("pde_step: non-finite field after one step (blow-up or unstable step)");
    return e.unload();
}

WaveField propagate_linear(const WaveField& f, double dt, Exec exec) {
    validate_field(f, "propagate_linear");
    Engine e(f.L, f.N, /*dealias=*/false, exec);
    e.load(f);
    e.propagate(dt);
    return e.unload();
}

double wrap_advisory_L(const Profile& p, const SolverConfig& cfg) {
    validate_grid(cfg.L, cfg.N, "wrap_advisory_L");
    Engine e(cfg.L, cfg.N, cfg.dealias, Exec::serial);
    e.load(sample_profile(p, cfg.L, cfg.N));
    double xi_res = e.resolved_xi();
    double v_max = 2.0 * kSqrt3 * xi_res;
    double width = 1.0;
    for (const Member& m : p.u0_members) width = std::max(width, m.width);
    for (const Member& m : p.v0_members) width = std::max(width, m.width);
    double t_end = cfg.t_end;
    for (double s : cfg.sample_times) t_end = std::max(t_end, s);
    return cfg.x_observation + v_max * t_end + 6.0 * width;
}

RunResult pde_run(const Profile& p, const SolverConfig& cfg) {
    const char* who = "pde_run";
    validate_grid(cfg.L, cfg.N, who);
    if (!(cfg.c_cfl > 0.0) || cfg.c_cfl > 1.0)
        throw ValidationError("pde_run: c_cfl must lie in (0, 1]");

    std::vector<double> targets = cfg.sample_times;
    if (targets.empty()) {
        if (!(cfg.t_end > 0.0))
            throw ValidationError("pde_run: need t_end > 0 or a nonempty sample_times list");
        targets.push_back(cfg.t_end);
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (!(targets[i] > 0.0))
            throw ValidationError("pde_run: sample times must be positive");
        if (i > 0 && targets[i] <= targets[i - 1])
            throw ValidationError("pde_run: sample times must be strictly increasing");
    }
    if (cfg.t_end > targets.back()) targets.push_back(cfg.t_end);

    double need = wrap_advisory_L(p, cfg);
    bool wrap_ok = cfg.L >= need;
    if (!wrap_ok && !cfg.wrap_override) {
        std::ostringstream os;
        os << who << ": domain half-length L = " << cfg.L
           << " is below the wrap-around advisory bound " << need
           << " for t_end = " << targets.back()
           << "; enlarge L or set wrap_override to accept periodic images";
        throw ValidationError(os.str());
    }

    double dt_bound = cfl_bound(cfg.L, cfg.N, cfg.c_cfl);
    if (cfg.dt > 0.0) {
        if (cfg.dt > dt_bound * (1.0 + 1e-12)) {
            std::ostringstream os;
            os << who << ": dt = " << cfg.dt << " violates the resolved-rotation bound "
               << dt_bound;
            throw ValidationError(os.str());
        }
        dt_bound = cfg.dt;
    }

    Engine e(cfg.L, cfg.N, cfg.dealias, cfg.exec);
    e.load(sample_profile(p, cfg.L, cfg.N));
    const double sup0 = e.sup_u();
    const double cap = cfg.growth_cap * std::max(sup0, 1e-300);

    RunResult out;
    out.wrap_L_required = need;
    out.wrap_ok = wrap_ok;

    double t = 0.0;
    std::size_t step_index = 0;
    for (std::size_t seg = 0; seg < targets.size(); ++seg) {
        double tgt = targets[seg];
        double span = tgt - t;
        auto nst = static_cast<std::size_t>(std::ceil(span / dt_bound - 1e-12));
        if (nst == 0) nst = 1;
        double dt = span / static_cast<double>(nst);
        if (seg == 0) out.dt = dt;
        Engine::Prop half = e.make_prop(0.5 * dt);
        Engine::Prop full = e.make_prop(dt);
        for (std::size_t s = 0; s < nst; ++s) {
            e.step(dt, half, full);
            ++step_index;
            if (!e.finite()) {
                std::ostringstream os;
                os << who << ": non-finite field at step " << step_index
                   << " (t = " << e.time() << "): blow-up or unstable step";
                throw StabilityError(os.str());
            }
            if (step_index % kGuardStride == 0 || s + 1 == nst) {
                double su = e.sup_u();
                if (su > cap) {
                    std::ostringstream os;
                    os << who << ": amplitude growth cap exceeded at step " << step_index
                       << " (t = " << e.time() << "): max|u| = " << su
                       << " against initial " << sup0 << " with growth_cap = "
                       << cfg.growth_cap;
                    throw StabilityError(os.str());
                }
            }
        }
        t = tgt;
        ConservedSample cs;
        cs.t = t;
        cs.mass_u = e.mass_u();
        cs.mass_v = e.mass_v();
        cs.sup_u = e.sup_u();
        cs.spectrum_gate = e.spectrum_gate();
        out.conserved.push_back(cs);
        out.fields.push_back(e.unload());
    }
    out.n_steps = step_index;
    return out;
}

double sample_ray(const WaveField& f, double x0) {
    validate_field(f, "sample_ray");
    const double dx = 2.0 * f.L / static_cast<double>(f.N);
    // Wrap into [-L, L) and convert to grid coordinates.
    double s = (x0 + f.L) / dx;
    double n = static_cast<double>(f.N);
    s -= std::floor(s / n) * n;
    auto base = static_cast<long>(std::floor(s));
    double frac = s - static_cast<double>(base);
    if (std::abs(frac) < 1e-13)
        return f.u[static_cast<std::size_t>(base) % f.N];
    if (std::abs(frac - 1.0) < 1e-13)
        return f.u[static_cast<std::size_t>(base + 1) % f.N];

    // Equispaced 8-point barycentric weights (-1)^i C(7, i) on offsets -3..4.
    static const double w[8] = {-1.0, 7.0, -21.0, 35.0, -35.0, 21.0, -7.0, 1.0};
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 8; ++i) {
        long j = base - 3 + i;
        double d = s - static_cast<double>(j);
        long jm = ((j % static_cast<long>(f.N)) + static_cast<long>(f.N))
                % static_cast<long>(f.N);
        double c = w[i] / d;
        num += c * f.u[static_cast<std::size_t>(jm)];
        den += c;
    }
    return num / den;
}

double trig_interp(const WaveField& f, double x0) {
    validate_field(f, "trig_interp");
    // Direct half-spectrum DFT (O(N^2)): mode m contributes
    // (2/N) Re(uh_m e^{i pi m (x0+L)/L}) for 0 < m < N/2, the mean and the
    // Nyquist mode with weight 1.  Deliberately transform-library-free so it
    // can serve as an independent oracle for sample_ray.
    const double pi = 3.1415926535897932384626433832795029;
    std::vector<cplx> uh(f.N / 2 + 1, cplx(0.0, 0.0));
    for (std::size_t m = 0; m < uh.size(); ++m) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < f.N; ++j) {
            double ang = -2.0 * pi * static_cast<double>(m) * static_cast<double>(j)
                       / static_cast<double>(f.N);
            acc += f.u[j] * cplx(std::cos(ang), std::sin(ang));
        }
        uh[m] = acc;
    }
    double phase_unit = pi * (x0 + f.L) / f.L;
    double val = uh[0].real();
    for (std::size_t m = 1; m + 1 < uh.size(); ++m) {
        double ang = phase_unit * static_cast<double>(m);
        val += 2.0 * (uh[m] * cplx(std::cos(ang), std::sin(ang))).real();
    }
    double ang_nyq = phase_unit * static_cast<double>(f.N / 2);
    val += (uh[f.N / 2] * cplx(std::cos(ang_nyq), std::sin(ang_nyq))).real();
    return val / static_cast<double>(f.N);
}

} // namespace bsq
