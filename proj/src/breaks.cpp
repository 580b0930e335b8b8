#include "collox/breaks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace collox {

double BreakSequence::mesh_size() const {
    double h = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        h = std::max(h, points[i + 1] - points[i]);
    }
    return h;
}

BreakSequence BreakSequence::slice(int first, int last) const {
    return BreakSequence{std::vector<double>(points.begin() + first, points.begin() + last + 1)};
}

BreakSequence build_uniform_breaks(double a, double b, int l) {
    if (!(a < b)) {
        throw std::invalid_argument("build_uniform_breaks: require a < b");
    }
    if (l < 1) {
        throw std::invalid_argument("build_uniform_breaks: require l >= 1");
    }
    BreakSequence breaks;
    breaks.points.resize(l + 1);
    for (int i = 0; i <= l; ++i) {
        breaks.points[i] = a + static_cast<double>(i) * (b - a) / l;
    }
    // Pin the ends so range arithmetic cannot drift past [a, b].
    breaks.points.front() = a;
    breaks.points.back() = b;
    validate(breaks);
    return breaks;
}

void validate(const BreakSequence& breaks) {
    if (breaks.points.size() < 2) {
        throw std::invalid_argument("BreakSequence: need at least two points");
    }
    for (std::size_t i = 0; i + 1 < breaks.points.size(); ++i) {
        if (!(breaks.points[i] < breaks.points[i + 1])) {
            throw std::invalid_argument("BreakSequence: points must be strictly increasing (index " +
                                        std::to_string(i) + ")");
        }
    }
    if (!std::isfinite(breaks.mesh_size())) {
        throw std::invalid_argument("BreakSequence: non-finite mesh size");
    }
}

}  // namespace collox
