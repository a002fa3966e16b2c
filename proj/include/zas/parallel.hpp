#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zas::num {

// Runs f(i) for i in [0, n).  `parallel` selects the OpenMP path when it was
// compiled in; the serial path is the reference, and results must not depend
// on which one ran.
template <class F>
void parallel_for(std::size_t n, bool parallel, F&& f) {
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            f(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)parallel;
#endif
    for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace zas::num
