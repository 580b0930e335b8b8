#pragma once

#include <vector>

#include "collox/breaks.hpp"

namespace collox {

/// Non-decreasing knot sequence of length dimension + order, built from a
/// break sequence and a continuity vector by the Curry-Schoenberg recipe:
/// order-fold end knots, and k - nu[i-1] copies of each interior break.
struct KnotVector {
    std::vector<double> knots;
    int order = 0;      // k
    int dimension = 0;  // n = k * l - sum(nu)
    BreakSequence breaks;
    std::vector<int> continuity;  // nu, one entry per interior break

    double a() const noexcept { return knots[order - 1]; }
    double b() const noexcept { return knots[dimension]; }
    int num_knots() const noexcept { return static_cast<int>(knots.size()); }
};

/// Builds the knot sequence for the given continuity vector. Each nu[i] must
/// lie in [1, k-1]; nu[i] == k (the break effectively disappears) is accepted
/// only with allow_vanishing_breaks.
KnotVector build_knots(const BreakSequence& breaks, int order, std::vector<int> continuity,
                       bool allow_vanishing_breaks = false);

/// Knots for second-order ODE collocation: two continuity conditions at every
/// interior break, so n = (k-2) l + 2.
KnotVector build_ode_knots(const BreakSequence& breaks, int order);

/// Largest index j with t_j <= x and t_j < t_{j+1} (0-based). At x == b the
/// last nontrivial interval is returned, making splines left-continuous there.
/// Throws std::out_of_range for x outside [a, b].
int find_interval(const KnotVector& kv, double x);

}  // namespace collox
