#pragma once

#include <span>
#include <vector>

#include "collox/breaks.hpp"
#include "collox/legendre.hpp"

namespace collox {

/// Collocation abscissae: pattern.size() sites strictly inside each break
/// interval, strictly increasing overall.
struct DatasiteSet {
    std::vector<double> tau;
    int per_interval = 0;

    int intervals() const noexcept {
        return per_interval == 0 ? 0 : static_cast<int>(tau.size()) / per_interval;
    }
    std::span<const double> for_interval(int i) const noexcept {
        return std::span<const double>(tau).subspan(
            static_cast<std::size_t>(i) * per_interval, per_interval);
    }
};

/// Maps the pattern into every interval: tau = midpoint + rho_j * half-width.
DatasiteSet build_datasites(const BreakSequence& breaks, const CollocationPattern& pattern);

}  // namespace collox
