#pragma once

#include <vector>

namespace collox {

/// Reference collocation pattern: points in (-1, 1), strictly increasing and
/// symmetric about 0, mapped affinely into each break interval.
struct CollocationPattern {
    std::vector<double> rho;

    int size() const noexcept { return static_cast<int>(rho.size()); }
};

/// The m zeroes of the Legendre polynomial P_m, each accurate to 1e-14.
/// Newton iteration on the three-term recurrence from Chebyshev-angle starts;
/// the root set is symmetrized exactly. m == 0 yields an empty pattern.
CollocationPattern legendre_pattern(int m);

}  // namespace collox
