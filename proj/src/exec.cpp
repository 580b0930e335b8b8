#include "collox/exec.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace collox::detail {

bool use_parallel(Exec exec, std::size_t estimated_nanos) noexcept {
#ifdef _OPENMP
    switch (exec) {
        case Exec::Serial:
            return false;
        case Exec::Parallel:
            return true;
        case Exec::Auto:
            return estimated_nanos >= kParallelThresholdNanos && omp_get_max_threads() > 1;
    }
    return false;
#else
    (void)exec;
    (void)estimated_nanos;
    return false;
#endif
}

}  // namespace collox::detail
