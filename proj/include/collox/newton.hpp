#pragma once

#include <array>

#include "collox/assemble.hpp"

namespace collox {

struct NewtonState {
    int iterations = 0;
    bool converged = false;
    /// Right-end values of the last iterates, most recent first. Slots beyond
    /// history_size are unset; the stopping test needs three real values, so
    /// convergence can never trigger before the third iteration.
    std::array<double, 3> history{};
    int history_size = 0;
};

struct NewtonResult {
    Spline solution;
    NewtonState state;
};

/// The supposed starting solution: the tangent line through (a, g_a) damped
/// to zero by (1 - tanh(x - a - 3))/2, interpolated at the left end, every
/// datasite, and the right end.
Spline initial_guess(const KnotVector& kv, const DatasiteSet& sites, double a, double g_a,
                     double dg_a);

/// Newton quasilinearization: repeatedly assembles the linearized collocation
/// system about the current iterate and solves it, until the right-end value
/// at b_star agrees with both of the previous two iterates within tol, or
/// iter_max is reached (converged = false). Non-finite coefficients or a
/// right-end value beyond 1e150 throw DivergenceError.
NewtonResult newton_solve(const OdeProblem& problem, const KnotVector& kv,
                          const DatasiteSet& sites, Spline start, double tol, int iter_max,
                          double b_star, Exec exec = Exec::Auto, FlopCount* flops = nullptr);

/// Same, reusing basis tables prepared by the caller (the drivers build the
/// caches of all segments ahead of the sequential Newton marches).
NewtonResult newton_solve(const OdeProblem& problem, const KnotVector& kv,
                          const DatasiteSet& sites, const BasisCache& cache, Spline start,
                          double tol, int iter_max, double b_star, Exec exec = Exec::Auto,
                          FlopCount* flops = nullptr);

}  // namespace collox
