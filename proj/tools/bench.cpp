/// Wall-time comparison of the serial reference kernels against their
/// OpenMP counterparts, plus a bitwise agreement check (the parallel paths
/// must reproduce the serial results exactly, not just to tolerance).
///
///   bsq_bench [--smoke] [--threads N]
///
/// --smoke shrinks the workloads to a few seconds for use as a CI test;
/// the bitwise assertions are identical in both modes.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "bsq/pde.hpp"
#include "bsq/policy.hpp"
#include "bsq/profiles.hpp"
#include "bsq/scatter.hpp"

using namespace bsq;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool bitwise_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

void print_row(const char* name, double t_serial, double t_openmp, bool agree) {
    std::printf("  %-28s %10.3f s %10.3f s %8.2fx   %s\n", name, t_serial, t_openmp,
                t_serial / t_openmp, agree ? "bitwise equal" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    bool smoke = false;
    int threads = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--smoke") == 0) {
            smoke = true;
        } else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
            threads = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--smoke] [--threads N]\n", argv[0]);
            return 2;
        }
    }
    set_threads(threads);
    std::printf("serial reference vs OpenMP kernels (%d threads%s)\n", max_threads(),
                smoke ? ", smoke sizes" : "");
    std::printf("  %-28s %12s %12s %9s\n", "kernel", "serial", "openmp", "speedup");

    bool all_agree = true;
    const Profile p = Profile::gaussian_u0(-0.1);

    // --- spectral-line sweep: one independent ODE solve per grid node ----
    {
        const int n_nodes = smoke ? 8 : 64;
        const double tol = smoke ? 1e-8 : 1e-10;
        std::vector<double> grid(n_nodes);
        for (int i = 0; i < n_nodes; ++i)
            grid[i] = 0.2 + (3.0 - 0.2) * i / (n_nodes - 1);

        LineConfig cfg;
        cfg.tol = tol;
        cfg.exec = Exec::serial;
        auto t0 = std::chrono::steady_clock::now();
        const SpectralLine serial = spectral_line(p, grid, cfg);
        const double ts = seconds_since(t0);

        cfg.exec = Exec::openmp;
        t0 = std::chrono::steady_clock::now();
        const SpectralLine omp_line = spectral_line(p, grid, cfg);
        const double tp = seconds_since(t0);

        const bool agree = bitwise_equal(serial.r1, omp_line.r1) &&
                           bitwise_equal(serial.ell_prime, omp_line.ell_prime);
        all_agree = all_agree && agree;
        print_row("spectral line", ts, tp, agree);
    }

    // --- PDE stepping: FFT transforms + pointwise spectral updates --------
    {
        SolverConfig cfg;
        cfg.L = smoke ? 40.0 : 100.0;
        cfg.N = smoke ? 256 : 4096;
        cfg.t_end = smoke ? 1.0 : 0.12; // ~(t_end / CFL-dt) steps
        cfg.wrap_override = true;

        cfg.exec = Exec::serial;
        auto t0 = std::chrono::steady_clock::now();
        const RunResult serial = pde_run(p, cfg);
        const double ts = seconds_since(t0);

        cfg.exec = Exec::openmp;
        t0 = std::chrono::steady_clock::now();
        const RunResult omp_run = pde_run(p, cfg);
        const double tp = seconds_since(t0);

        const bool agree = bitwise_equal(serial.fields[0].u, omp_run.fields[0].u) &&
                           bitwise_equal(serial.fields[0].v, omp_run.fields[0].v);
        all_agree = all_agree && agree;
        print_row("pde stepping", ts, tp, agree);
    }

    // --- assumption mesh: |s11| scan over a sector mesh -------------------
    {
        AssumptionConfig cfg;
        cfg.k_min = 0.05;
        cfg.k_sector_max = smoke ? 1.5 : 2.5;
        cfg.n_radial = smoke ? 4 : 10;
        cfg.n_spokes = smoke ? 3 : 5;
        cfg.tol = smoke ? 1e-8 : 1e-10;

        cfg.exec = Exec::serial;
        auto t0 = std::chrono::steady_clock::now();
        const AssumptionReport serial = assumption_checks(p, cfg);
        const double ts = seconds_since(t0);

        cfg.exec = Exec::openmp;
        t0 = std::chrono::steady_clock::now();
        const AssumptionReport omp_rep = assumption_checks(p, cfg);
        const double tp = seconds_since(t0);

        const bool agree = serial.min_abs_s11_D1 == omp_rep.min_abs_s11_D1 &&
                           serial.min_abs_sA11_D4 == omp_rep.min_abs_sA11_D4 &&
                           serial.origin_limit_s == omp_rep.origin_limit_s;
        all_agree = all_agree && agree;
        print_row("assumption mesh", ts, tp, agree);
    }

    if (!all_agree) {
        std::printf("FAILURE: an OpenMP kernel diverged from the serial reference\n");
        return 1;
    }
    std::printf("all OpenMP kernels reproduce the serial reference bitwise\n");
    return 0;
}
