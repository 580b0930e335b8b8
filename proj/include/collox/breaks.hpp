#pragma once

#include <vector>

namespace collox {

/// Strictly increasing partition of a solution interval into `intervals()`
/// subintervals.
struct BreakSequence {
    std::vector<double> points;

    int intervals() const noexcept { return static_cast<int>(points.size()) - 1; }
    double front() const noexcept { return points.front(); }
    double back() const noexcept { return points.back(); }

    /// Largest subinterval width.
    double mesh_size() const;

    /// Sub-sequence spanning break indices [first, last] (inclusive, 0-based).
    BreakSequence slice(int first, int last) const;
};

/// l+1 equally spaced points on [a, b]. The end points are pinned exactly.
BreakSequence build_uniform_breaks(double a, double b, int l);

/// Validates strict monotonicity and length >= 2; throws std::invalid_argument.
void validate(const BreakSequence& breaks);

}  // namespace collox
