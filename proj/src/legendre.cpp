#include "collox/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace collox {
namespace {

// P_m(x) and P_m'(x) via the three-term recurrence.
std::pair<double, double> legendre_value(int m, double x) {
    double p_prev = 1.0;
    double p = x;
    for (int j = 2; j <= m; ++j) {
        const double p_next = ((2.0 * j - 1.0) * x * p - (j - 1.0) * p_prev) / j;
        p_prev = p;
        p = p_next;
    }
    const double dp = m * (x * p - p_prev) / (x * x - 1.0);
    return {p, dp};
}

}  // namespace

CollocationPattern legendre_pattern(int m) {
    if (m < 0) {
        throw std::invalid_argument("legendre_pattern: m must be non-negative");
    }
    CollocationPattern pattern;
    pattern.rho.resize(m);
    if (m == 0) {
        return pattern;
    }
    constexpr double pi = 3.14159265358979323846;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-angle starting guess, descending in x.
        double x = std::cos(pi * (i + 0.75) / (m + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre_value(m, x);
            const double step = p / dp;
            x -= step;
            if (std::abs(step) < 1e-15) {
                break;
            }
        }
        pattern.rho[m - 1 - i] = x;
    }
    std::sort(pattern.rho.begin(), pattern.rho.end());
    // The roots are symmetric about 0; enforce it exactly.
    for (int i = 0; i < m / 2; ++i) {
        const double v = 0.5 * (pattern.rho[m - 1 - i] - pattern.rho[i]);
        pattern.rho[m - 1 - i] = v;
        pattern.rho[i] = -v;
    }
    if (m % 2 == 1) {
        pattern.rho[m / 2] = 0.0;
    }
    return pattern;
}

}  // namespace collox
