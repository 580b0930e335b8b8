#pragma once

#include <utility>
#include <vector>

#include "collox/drivers.hpp"
#include "collox/problem.hpp"

namespace collox {

/// Van der Pol parameters: D^2 g + mu (g^2 - 1) Dg + g = 0, g(0) = g0,
/// Dg(0) = dg0.
struct VdpParams {
    double mu = 1.0;
    double g0 = 1.0;
    double dg0 = 0.0;
};

/// The problem in first-explicit form D^2 g = mu (1 - g^2) Dg - g with its
/// two partials, dF/dg = -2 mu g Dg - 1 and dF/d(Dg) = mu (1 - g^2).
OdeProblem vdp_problem(const VdpParams& p);

/// Residual of the equation on the approximation:
/// err(x) = D^2 f(x) + mu (f(x)^2 - 1) Df(x) + f(x).
double residual(const PiecewiseSolution& s, const VdpParams& p, double x);

/// Upper bound C(h^{k-2} + h^k + mu (3 h^{k-1} + h^{3k-1}/4)) + 4 mu^2 h^k
/// with h the mesh size. Valid only under boundary-condition assumptions;
/// exposed as a diagnostic scale, not asserted for initial-value runs.
/// Requires k >= 4.
double residual_bound(int k, double mesh, double mu, double c = 1.0);

struct PhaseSamples {
    std::vector<std::pair<double, double>> points;  // (g, Dg)
    double max_g_dg = 0.0;                          // max |g * Dg| over the grid
};

PhaseSamples phase_samples(const PiecewiseSolution& s, int samples_per_interval = 16);

/// Local extrema of the solution: sign changes of Df on the sampling grid,
/// refined by bisection on Df. Returns (x, g) pairs with x > x_min.
std::vector<std::pair<double, double>> find_extrema(const PiecewiseSolution& s, double x_min,
                                                    int samples_per_interval = 32);

}  // namespace collox
