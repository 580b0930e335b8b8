#include "collox/newton.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "collox/errors.hpp"
#include "collox/interpolate.hpp"

namespace collox {

Spline initial_guess(const KnotVector& kv, const DatasiteSet& sites, double a, double g_a,
                     double dg_a) {
    const int n = kv.dimension;
    std::vector<double> pts;
    pts.reserve(n);
    pts.push_back(kv.a());
    pts.insert(pts.end(), sites.tau.begin(), sites.tau.end());
    pts.push_back(kv.b());
    if (static_cast<int>(pts.size()) != n) {
        throw std::invalid_argument("initial_guess: sites do not match the spline dimension");
    }
    std::vector<double> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double x = pts[i];
        vals[i] = (g_a + dg_a * (x - a)) * (1.0 - std::tanh(x - a - 3.0)) / 2.0;
    }
    return interpolate(kv, pts, vals);
}

NewtonResult newton_solve(const OdeProblem& problem, const KnotVector& kv,
                          const DatasiteSet& sites, Spline start, double tol, int iter_max,
                          double b_star, Exec exec, FlopCount* flops) {
    const BasisCache cache = build_basis_cache(kv, sites, exec);
    return newton_solve(problem, kv, sites, cache, std::move(start), tol, iter_max, b_star, exec,
                        flops);
}

NewtonResult newton_solve(const OdeProblem& problem, const KnotVector& kv,
                          const DatasiteSet& sites, const BasisCache& cache, Spline start,
                          double tol, int iter_max, double b_star, Exec exec, FlopCount* flops) {
    validate(problem);
    if (!(tol > 0.0)) {
        throw std::invalid_argument("newton_solve: tol must be positive");
    }
    if (iter_max < 1) {
        throw std::invalid_argument("newton_solve: iter_max must be at least 1");
    }
    if (!(b_star >= kv.a() && b_star <= kv.b())) {
        throw std::invalid_argument("newton_solve: b_star outside the basic interval");
    }

    AbdMatrix a = AbdMatrix::zero(kv.order, kv.breaks.intervals());
    RhsVector rhs;
    AbdWorkspace work;
    std::vector<double> next_coeffs;

    Spline current = std::move(start);
    NewtonState state;
    for (int r = 1; r <= iter_max; ++r) {
        assemble_system(problem, kv, sites, current, cache, a, rhs, exec, flops);
        solve_abd_into(a, rhs, next_coeffs, work, flops);
        current.coeffs.swap(next_coeffs);
        state.iterations = r;

        for (double c : current.coeffs) {
            if (!std::isfinite(c)) {
                throw DivergenceError("newton_solve: non-finite coefficient at iteration " +
                                          std::to_string(r),
                                      r);
            }
        }
        // Early iterates legitimately overshoot by many orders of magnitude
        // (the linearized operator has growing modes until the left part of
        // the range settles), so only a near-overflow value counts as
        // divergence. At b_star == b the endpoint support makes the value the
        // last coefficient exactly.
        const double v = (b_star == kv.b()) ? current.coeffs.back()
                                            : eval_spline(current, b_star, 0);
        if (std::abs(v) > 1e150) {
            throw DivergenceError("newton_solve: iterate exceeded 1e150 at iteration " +
                                      std::to_string(r),
                                  r);
        }

        // Stop when the value at b_star agrees with both previous iterates;
        // needs two prior real values, so never before the third iteration.
        if (state.history_size >= 2 && std::abs(v - state.history[0]) < tol &&
            std::abs(v - state.history[1]) < tol) {
            state.converged = true;
        }
        state.history[2] = state.history[1];
        state.history[1] = state.history[0];
        state.history[0] = v;
        if (state.history_size < 3) {
            ++state.history_size;
        }
        if (state.converged) {
            break;
        }
    }
    return NewtonResult{std::move(current), state};
}

}  // namespace collox
