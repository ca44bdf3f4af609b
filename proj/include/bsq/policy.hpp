// Execution policy for the data-parallel sweeps.
//
// Every parallel kernel in the library exists in two forms behind one entry
// point: a serial reference path and an OpenMP path. The serial path is the
// ground truth the tests pin down; the OpenMP path must reproduce it (the
// per-item work is independent and results are written to fixed slots, so
// the two agree bitwise). tools/bench.cpp compares their wall time.
#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bsq {

enum class Exec {
    serial, ///< plain loop, reference implementation
    openmp, ///< OpenMP parallel-for (falls back to serial if not compiled in)
};

/// Apply fn(i) for i in [0, n). With Exec::openmp the iterations run in
/// parallel; fn must write only to slot i of its outputs.
template <typename F>
void parallel_for(std::size_t n, Exec policy, F&& fn) {
#ifdef _OPENMP
    if (policy == Exec::openmp) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
            fn(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)policy;
#endif
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

/// Number of OpenMP threads the openmp policy would use (1 when compiled
/// without OpenMP).
inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Set the OpenMP thread count (no-op without OpenMP). 0 keeps the default.
inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

} // namespace bsq
