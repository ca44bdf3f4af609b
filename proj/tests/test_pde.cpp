/// Pseudo-spectral solver: linear dispersion relation per mode, exact
/// reversibility of the integrating factor, conservation of the mean,
/// spectral self-convergence, small-amplitude agreement with the closed-form
/// linear solution, growth guards, wrap-around advisory, interpolation
/// oracles, and scheduling independence.

#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstring>
#include <vector>

#include "bsq/errors.hpp"
#include "bsq/pde.hpp"
#include "bsq/profiles.hpp"

using namespace bsq;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795029;
constexpr double kSqrt3 = 1.7320508075688772935274463415058724;

double sup_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Discrete Fourier coefficient of mode m (complex, forward convention of a
/// plain DFT sum), used to read off per-mode amplitude and phase.
std::complex<double> dft_mode(const std::vector<double>& u, int m) {
    const std::size_t n = u.size();
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        acc += u[j] * std::polar(1.0, -2.0 * kPi * m * double(j) / double(n));
    return acc;
}

} // namespace

TEST_SUITE("pde") {

TEST_CASE("zero data stays zero") {
    SolverConfig cfg;
    cfg.L = 50.0;
    cfg.N = 64;
    cfg.t_end = 5.0;
    cfg.wrap_override = true; // zero data has no resolved modes but x_obs = 0
    const RunResult r = pde_run(Profile::zero(), cfg);
    REQUIRE(r.fields.size() == 1);
    CHECK(sup_abs(r.fields[0].u) == 0.0);
    CHECK(sup_abs(r.fields[0].v) == 0.0);
    CHECK(r.conserved[0].mass_u == 0.0);
}

TEST_CASE("single-mode eigenpair rotates at the dispersion frequency") {
    // For the linearized system, the pair (u, v) = eps cos(xi x) (1, xi/sqrt(3))
    // is an eigenmode rotating as e^{i Omega t} with Omega = xi^2/sqrt(3).
    const double L = 16.0;
    const std::size_t N = 256;
    const int m = 5;
    const double xi = kPi * m / L;
    const double eps = 1e-8;

    WaveField f;
    f.L = L;
    f.N = N;
    f.t = 0.0;
    f.u.resize(N);
    f.v.resize(N);
    for (std::size_t j = 0; j < N; ++j) {
        const double x = -L + 2.0 * L * double(j) / double(N);
        f.u[j] = eps * std::cos(xi * x);
        f.v[j] = xi / kSqrt3 * eps * std::cos(xi * x);
    }

    const std::complex<double> c0 = dft_mode(f.u, m);
    REQUIRE(std::abs(c0) > 0.4 * eps * double(N)); // the mode is populated

    const double t_end = 2.0;
    const double dt_bound = 0.5 * (L / double(N)) * (L / double(N)) * kSqrt3;
    const int n_steps = int(std::ceil(t_end / dt_bound));
    const double dt = t_end / n_steps;
    for (int s = 0; s < n_steps; ++s) f = pde_step(f, dt);

    // The positive-frequency component of the eigenpair picks up exactly
    // e^{+i Omega t} with Omega = xi^2 / sqrt(3).
    const std::complex<double> cT = dft_mode(f.u, m);
    const double omega = xi * xi / kSqrt3;
    CHECK(std::abs(std::abs(cT) - std::abs(c0)) <= 1e-6 * std::abs(c0));
    const std::complex<double> rot = cT / c0;
    const std::complex<double> expected = std::polar(1.0, omega * t_end);
    CHECK(std::abs(rot - expected) <= 1e-6);
}

TEST_CASE("linear propagation is exactly reversible") {
    const Profile p = Profile::gaussian_u0(0.3);
    WaveField f = sample_profile(p, 40.0, 512);
    const WaveField fwd = propagate_linear(f, 7.3);
    const WaveField back = propagate_linear(fwd, -7.3);
    CHECK(sup_diff(back.u, f.u) <= 1e-12);
    CHECK(sup_diff(back.v, f.v) <= 1e-12);
    CHECK(back.t == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("mean of u is conserved to machine precision") {
    SolverConfig cfg;
    cfg.L = 100.0;
    cfg.N = 2048;
    cfg.t_end = 20.0;
    cfg.wrap_override = true;
    const Profile p = Profile::gaussian_u0(-0.1);
    const RunResult r = pde_run(p, cfg);
    // mass_u = 2L/N * sum u = -0.1 sqrt(pi) up to grid truncation; the
    // mode-0 read-off makes the drift exactly zero step to step.
    const double mass0 = -0.1 * 1.7724538509055160;
    CHECK(std::abs(r.conserved[0].mass_u - mass0) <= 1e-12);
    CHECK(r.wrap_ok == false); // advisory fired and was overridden
    CHECK(r.wrap_L_required > cfg.L);
}

TEST_CASE("spectral self-convergence under N-doubling") {
    SolverConfig coarse;
    coarse.L = 60.0;
    coarse.N = 512;
    coarse.t_end = 10.0;
    coarse.dt = 0.002; // same dt for both, below both CFL bounds
    coarse.wrap_override = true;
    SolverConfig fine = coarse;
    fine.N = 1024;

    const Profile p = Profile::gaussian_u0(-0.1);
    const RunResult rc = pde_run(p, coarse);
    const RunResult rf = pde_run(p, fine);
    // Compare on the shared (coarse) grid: every second fine node.
    double m = 0.0;
    for (std::size_t j = 0; j < coarse.N; ++j)
        m = std::max(m, std::abs(rc.fields[0].u[j] - rf.fields[0].u[2 * j]));
    CHECK(m <= 1e-6);
}

TEST_CASE("small-amplitude runs converge to the closed-form linear solution") {
    // Relative deviation from exact linear evolution is O(amplitude).
    const double L = 40.0;
    const std::size_t N = 512;
    const double t_end = 10.0;
    double rel[2];
    const double amps[2] = {1e-4, 1e-5};
    for (int i = 0; i < 2; ++i) {
        const Profile p = Profile::gaussian_u0(amps[i]);
        SolverConfig cfg;
        cfg.L = L;
        cfg.N = N;
        cfg.t_end = t_end;
        cfg.wrap_override = true;
        const RunResult r = pde_run(p, cfg);
        const WaveField lin = propagate_linear(sample_profile(p, L, N), t_end);
        rel[i] = sup_diff(r.fields[0].u, lin.u) / sup_abs(lin.u);
    }
    CHECK(rel[0] / rel[1] > 5.0);
    CHECK(rel[0] / rel[1] < 20.0);
    CHECK(rel[1] < 1e-4);
}

TEST_CASE("growth guard trips on focusing data") {
    // A large positive bump focuses and blows up; the sup-norm guard must
    // abort with a stability error rather than overflow.
    SolverConfig cfg;
    cfg.L = 40.0;
    cfg.N = 1024;
    cfg.t_end = 10.0;
    cfg.growth_cap = 3.0;
    cfg.wrap_override = true;
    const Profile p = Profile::gaussian_u0(3.0);
    CHECK_THROWS_AS(pde_run(p, cfg), StabilityError);
}

TEST_CASE("wrap advisory fires without the override and is recorded with it") {
    const Profile p = Profile::gaussian_u0(-0.1);
    SolverConfig cfg;
    cfg.L = 20.0;
    cfg.N = 128;
    cfg.t_end = 1.0;
    const double need = wrap_advisory_L(p, cfg);
    CHECK(need > cfg.L); // dispersive cone leaves a 20-unit box within t = 1
    CHECK_THROWS_AS(pde_run(p, cfg), ValidationError);
    cfg.wrap_override = true;
    const RunResult r = pde_run(p, cfg);
    CHECK(r.wrap_ok == false);
    CHECK(r.wrap_L_required == doctest::Approx(need).epsilon(1e-12));

    // A roomy domain needs no override.
    SolverConfig roomy = cfg;
    roomy.wrap_override = false;
    roomy.L = 64.0;
    roomy.N = 256;
    const RunResult r2 = pde_run(p, roomy);
    CHECK(r2.wrap_ok == true);
}

TEST_CASE("sample times drive the field log") {
    SolverConfig cfg;
    cfg.L = 64.0;
    cfg.N = 256;
    cfg.sample_times = {0.5, 1.0};
    cfg.t_end = 1.0;
    const Profile p = Profile::gaussian_u0(-0.1);
    const RunResult r = pde_run(p, cfg);
    REQUIRE(r.fields.size() == 2);
    CHECK(r.fields[0].t == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.fields[1].t == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.conserved.size() == 2);

    SolverConfig bad = cfg;
    bad.sample_times = {1.0, 0.5};
    CHECK_THROWS_AS(pde_run(p, bad), ValidationError);
}

TEST_CASE("interpolation: barycentric matches full trigonometric") {
    const Profile p = Profile::gaussian_u0(0.2, 1.3, 0.7);
    const WaveField f = sample_profile(p, 40.0, 1024);
    for (const double x : {-17.3, -4.11, -0.37, 0.0, 2.6543, 9.99, 18.2}) {
        const double fast = sample_ray(f, x);
        const double exact = trig_interp(f, x);
        CHECK(std::abs(fast - exact) <= 1e-8);
    }
    // Exact grid nodes short-circuit to the stored value.
    const double x3 = -40.0 + 2.0 * 40.0 * 3.0 / 1024.0;
    CHECK(sample_ray(f, x3) == f.u[3]);
}

TEST_CASE("CFL gate on explicit steps") {
    const WaveField f = sample_profile(Profile::gaussian_u0(0.1), 20.0, 128);
    const double bound = 0.5 * (20.0 / 128.0) * (20.0 / 128.0) * kSqrt3;
    CHECK_THROWS_AS(pde_step(f, 2.0 * bound), ValidationError);
    CHECK_THROWS_AS(pde_step(f, 0.0), ValidationError);
    const WaveField g = pde_step(f, 0.99 * bound);
    CHECK(g.t == doctest::Approx(0.99 * bound).epsilon(1e-15));
}

TEST_CASE("serial and parallel execution agree bitwise") {
    SolverConfig a;
    a.L = 40.0;
    a.N = 256;
    a.t_end = 2.0;
    a.wrap_override = true;
    a.exec = Exec::serial;
    SolverConfig b = a;
    b.exec = Exec::openmp;
    const Profile p = Profile::gaussian_u0(-0.1);
    const RunResult ra = pde_run(p, a);
    const RunResult rb = pde_run(p, b);
    CHECK(std::memcmp(ra.fields[0].u.data(), rb.fields[0].u.data(),
                      a.N * sizeof(double)) == 0);
    CHECK(std::memcmp(ra.fields[0].v.data(), rb.fields[0].v.data(),
                      a.N * sizeof(double)) == 0);
}

TEST_CASE("grid validation") {
    const Profile p = Profile::gaussian_u0(0.1);
    CHECK_THROWS_AS(sample_profile(p, -5.0, 64), ValidationError);
    CHECK_THROWS_AS(sample_profile(p, 10.0, 100), ValidationError); // not a power of two
    CHECK_THROWS_AS(sample_profile(p, 10.0, 8), ValidationError);   // too small
}

} // TEST_SUITE
