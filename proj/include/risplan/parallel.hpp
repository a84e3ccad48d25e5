#pragma once

// Execution policy for the hot kernels. Every parallel kernel has a serial
// twin that produces identical output; tests compare the two and the bench
// tool times them.

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace risplan {

enum class ExecPolicy { Serial, Parallel };

inline bool openmp_enabled() {
#if defined(_OPENMP)
    return true;
#else
    return false;
#endif
}

inline int thread_count(ExecPolicy policy) {
#if defined(_OPENMP)
    return policy == ExecPolicy::Parallel ? omp_get_max_threads() : 1;
#else
    (void)policy;
    return 1;
#endif
}

} // namespace risplan
