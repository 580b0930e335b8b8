#pragma once

#include <cstddef>

namespace collox {

/// Execution policy for the data-parallel kernels (basis tables, system
/// assembly, solution sampling). Every kernel has a serial reference path and
/// an OpenMP path that produce bit-identical results; Auto picks the parallel
/// path when the work is large enough to pay for thread startup.
enum class Exec {
    Auto,
    Serial,
    Parallel,
};

namespace detail {

// Rough per-item costs in nanoseconds, used to size parallel regions.
inline constexpr std::size_t kCostBasisEval = 250;
inline constexpr std::size_t kCostAssemblyRow = 60;
inline constexpr std::size_t kCostSamplePoint = 150;

// Forking below ~100us of work loses more to thread startup than it gains.
inline constexpr std::size_t kParallelThresholdNanos = 100000;

bool use_parallel(Exec exec, std::size_t estimated_nanos) noexcept;

}  // namespace detail

}  // namespace collox
