#include "collox/knots.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace collox {

KnotVector build_knots(const BreakSequence& breaks, int order, std::vector<int> continuity,
                       bool allow_vanishing_breaks) {
    validate(breaks);
    if (order < 2) {
        throw std::invalid_argument("build_knots: require order >= 2");
    }
    const int l = breaks.intervals();
    if (static_cast<int>(continuity.size()) != l - 1) {
        throw std::invalid_argument("build_knots: continuity length must be " +
                                    std::to_string(l - 1) + ", got " +
                                    std::to_string(continuity.size()));
    }
    const int max_nu = allow_vanishing_breaks ? order : order - 1;
    for (std::size_t i = 0; i < continuity.size(); ++i) {
        if (continuity[i] < 1 || continuity[i] > max_nu) {
            throw std::invalid_argument("build_knots: continuity[" + std::to_string(i) +
                                        "] = " + std::to_string(continuity[i]) +
                                        " outside [1, " + std::to_string(max_nu) + "]");
        }
    }

    const int nu_total = std::accumulate(continuity.begin(), continuity.end(), 0);
    const int n = order * l - nu_total;

    KnotVector kv;
    kv.order = order;
    kv.dimension = n;
    kv.breaks = breaks;
    kv.continuity = std::move(continuity);
    kv.knots.reserve(n + order);
    for (int j = 0; j < order; ++j) {
        kv.knots.push_back(breaks.points.front());
    }
    for (int i = 1; i < l; ++i) {
        const int copies = order - kv.continuity[i - 1];
        for (int j = 0; j < copies; ++j) {
            kv.knots.push_back(breaks.points[i]);
        }
    }
    for (int j = 0; j < order; ++j) {
        kv.knots.push_back(breaks.points.back());
    }
    return kv;
}

KnotVector build_ode_knots(const BreakSequence& breaks, int order) {
    if (order < 3) {
        throw std::invalid_argument("build_ode_knots: require order >= 3");
    }
    return build_knots(breaks, order, std::vector<int>(breaks.intervals() - 1, 2));
}

int find_interval(const KnotVector& kv, double x) {
    const int k = kv.order;
    const int n = kv.dimension;
    if (!(x >= kv.knots[k - 1]) || !(x <= kv.knots[n])) {
        throw std::out_of_range("find_interval: x = " + std::to_string(x) +
                                " outside basic interval [" + std::to_string(kv.knots[k - 1]) +
                                ", " + std::to_string(kv.knots[n]) + "]");
    }
    if (x == kv.knots[n]) {
        // Right endpoint: last nontrivial interval.
        int j = n - 1;
        while (j > k - 1 && kv.knots[j] == kv.knots[j + 1]) {
            --j;
        }
        return j;
    }
    // Largest j with t_j <= x; end knots repeat, so j lands in [k-1, n-1].
    int lo = k - 1;
    int hi = n;  // knots[hi] > x is maintained
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        if (kv.knots[mid] <= x) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

}  // namespace collox
