#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qde {

/// Execution policy for the data-parallel kernels. Every parallel kernel has
/// a serial twin used as the reference in tests and benchmarks.
enum class ExecPolicy { serial, openmp };

inline ExecPolicy default_policy() {
#ifdef _OPENMP
    return ExecPolicy::openmp;
#else
    return ExecPolicy::serial;
#endif
}

inline int worker_count(ExecPolicy p) {
#ifdef _OPENMP
    if (p == ExecPolicy::openmp) return omp_get_max_threads();
#else
    (void)p;
#endif
    return 1;
}

/// Run f(0..n-1); iterations must be independent. Under the openmp policy
/// the schedule is dynamic because per-entry costs vary wildly.
template <class F>
void parallel_for(ExecPolicy policy, std::size_t n, F&& f) {
#ifdef _OPENMP
    if (policy == ExecPolicy::openmp) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(n); ++i) f(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)policy;
#endif
    for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace qde
