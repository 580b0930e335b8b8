#include "collox/datasites.hpp"

#include <stdexcept>
#include <string>

namespace collox {

DatasiteSet build_datasites(const BreakSequence& breaks, const CollocationPattern& pattern) {
    if (pattern.size() == 0) {
        throw std::invalid_argument("build_datasites: pattern must be nonempty");
    }
    for (int j = 0; j < pattern.size(); ++j) {
        if (!(pattern.rho[j] > -1.0 && pattern.rho[j] < 1.0) ||
            (j > 0 && !(pattern.rho[j - 1] < pattern.rho[j]))) {
            throw std::invalid_argument("build_datasites: pattern must be increasing inside (-1, 1)");
        }
    }
    const int l = breaks.intervals();
    DatasiteSet sites;
    sites.per_interval = pattern.size();
    sites.tau.reserve(static_cast<std::size_t>(l) * pattern.size());
    for (int i = 0; i < l; ++i) {
        const double mid = 0.5 * (breaks.points[i + 1] + breaks.points[i]);
        const double half = 0.5 * (breaks.points[i + 1] - breaks.points[i]);
        for (int j = 0; j < pattern.size(); ++j) {
            sites.tau.push_back(mid + pattern.rho[j] * half);
        }
    }
    for (std::size_t j = 0; j + 1 < sites.tau.size(); ++j) {
        if (!(sites.tau[j] < sites.tau[j + 1])) {
            throw std::invalid_argument("build_datasites: datasites coalesced at index " +
                                        std::to_string(j));
        }
    }
    return sites;
}

}  // namespace collox
