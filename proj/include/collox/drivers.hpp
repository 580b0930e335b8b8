#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "collox/newton.hpp"

namespace collox {

enum class Method {
    Original,   // one collocation solve spanning the whole range
    Expanding,  // solves on growing prefixes, carrying coefficients forward
    Segmented,  // independent consecutive pieces inheriting value and slope
};

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct SolverConfig {
    int k = 5;
    int l = 160;
    double a = 0.0;
    double b = 40.0;
    double tol = 1e-4;
    int iter_max = 500;  // per segment/stage
    int w = 1;           // window count; must divide l, and equal 1 for Original
    Method method = Method::Original;
    int samples_per_interval = 16;
    Exec exec = Exec::Auto;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const SolverConfig& cfg);

struct Piece {
    double lo = 0.0;
    double hi = 0.0;
    Spline spline;
};

/// Ordered pieces covering [a, b], adjacent pieces sharing endpoints.
struct PiecewiseSolution {
    std::vector<Piece> pieces;

    double a() const noexcept { return pieces.front().lo; }
    double b() const noexcept { return pieces.back().hi; }
    /// Index of the piece containing x (the right piece at interior joins).
    int piece_index(double x) const;
    double eval(double x, int deriv = 0) const;
};

/// err(x) = D^2 f(x) - F(x, f(x), Df(x)) evaluated on the piece containing x.
double equation_residual(const OdeProblem& problem, const PiecewiseSolution& s, double x);

struct SamplePoint {
    double x, f, df, d2f, err;
};

/// Evaluates the solution and equation residual on the report grid: every
/// breakpoint plus `samples_per_interval` uniformly spaced interior points
/// per interval.
std::vector<SamplePoint> sample_solution(const OdeProblem& problem, const PiecewiseSolution& s,
                                         int samples_per_interval, Exec exec = Exec::Auto);

struct SolveReport {
    PiecewiseSolution solution;
    std::vector<int> iterations_per_segment;
    bool converged = false;
    double wall_seconds = 0.0;    // assembly + solve + basis precomputation
    double newton_seconds = 0.0;  // iteration loops only (the cost model's scope)
    double flop_estimate = 0.0;   // (k^3 + k^2 + k) N l cost model
    std::uint64_t counted_flops = 0;  // instrumented assembly + elimination count
    double err_inf = 0.0;
    std::vector<std::pair<double, double>> err_samples;  // (x, err)

    int total_iterations() const;  // N
};

/// Dominant-term cost model (k^3 + k^2 + k) * n_iters * l.
double flop_estimate(int k, int n_iters, int l);

SolveReport solve_original(const OdeProblem& problem, const SolverConfig& cfg);
SolveReport solve_expanding(const OdeProblem& problem, const SolverConfig& cfg);
SolveReport solve_segmented(const OdeProblem& problem, const SolverConfig& cfg);

/// Dispatches on cfg.method.
SolveReport solve(const OdeProblem& problem, const SolverConfig& cfg);

}  // namespace collox
