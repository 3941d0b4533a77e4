#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oqsim {

/// Index-parallel loop over [0, n).  Every iteration writes results through
/// its own index only, so the output is identical for any thread count.
/// threads <= 0 uses the runtime default pool, threads == 1 runs inline.
template <class Body>
void parallel_for(std::ptrdiff_t n, int threads, Body&& body) {
#ifdef _OPENMP
    if (threads != 1) {
        if (threads > 0) {
#pragma omp parallel for schedule(static) num_threads(threads)
            for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
        } else {
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
        }
        return;
    }
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

}  // namespace oqsim
