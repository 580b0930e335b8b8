#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "collox/errors.hpp"
#include "collox/newton.hpp"
#include "collox/vdp.hpp"

using namespace collox;

namespace {

// D^2 g = -g, g(0) = 1, Dg(0) = 0: solution cos(x). Linear, so the first
// Newton solve already lands on the collocation approximation.
OdeProblem cosine_problem() {
    OdeProblem p;
    p.f = [](double, double g, double) { return -g; };
    p.df_dg = [](double, double, double) { return -1.0; };
    p.df_ddg = [](double, double, double) { return 0.0; };
    p.ic = {InitialCondition{1.0, 0.0, 1.0}, InitialCondition{0.0, 1.0, 0.0}};
    return p;
}

struct Setup {
    KnotVector kv;
    DatasiteSet sites;
    Spline guess;
};

Setup make_setup(int k, int l, double a, double b, double g_a, double dg_a) {
    const BreakSequence breaks = build_uniform_breaks(a, b, l);
    Setup s{build_ode_knots(breaks, k), build_datasites(breaks, legendre_pattern(k - 2)), {}};
    s.guess = initial_guess(s.kv, s.sites, a, g_a, dg_a);
    return s;
}

}  // namespace

TEST_CASE("initial guess interpolates the damped tangent line") {
    const double a = 0.0, g_a = 1.0, dg_a = 0.0;
    const Setup s = make_setup(5, 10, a, 10.0, g_a, dg_a);
    const auto f0 = [&](double x) {
        return (g_a + dg_a * (x - a)) * (1.0 - std::tanh(x - a - 3.0)) / 2.0;
    };
    CHECK(eval_spline(s.guess, 0.0, 0) == doctest::Approx(f0(0.0)).epsilon(1e-12));
    CHECK(f0(0.0) == doctest::Approx((1.0 + std::tanh(3.0)) / 2.0));
    // Halfway point of the damping window: exactly half the tangent value.
    CHECK(f0(a + 3.0) == 0.5 * (g_a + 3.0 * dg_a));
    for (double x : s.sites.tau) {
        CHECK(eval_spline(s.guess, x, 0) == doctest::Approx(f0(x)).epsilon(1e-10));
    }
}

TEST_CASE("initial guess from zero data is the zero spline") {
    const Setup s = make_setup(4, 6, 0.0, 6.0, 0.0, 0.0);
    for (double c : s.guess.coeffs) {
        CHECK(c == 0.0);
    }
}

TEST_CASE("linear problems converge immediately") {
    const OdeProblem problem = cosine_problem();
    const double two_pi = 2.0 * 3.14159265358979323846;
    const Setup s = make_setup(5, 16, 0.0, two_pi, 1.0, 0.0);

    const NewtonResult one =
        newton_solve(problem, s.kv, s.sites, s.guess, 1e-4, 1, two_pi);
    const NewtonResult two =
        newton_solve(problem, s.kv, s.sites, s.guess, 1e-4, 2, two_pi);
    // Constant coefficients: the second solve reproduces the first exactly.
    CHECK(one.solution.coeffs == two.solution.coeffs);
    CHECK_FALSE(one.state.converged);

    const NewtonResult full =
        newton_solve(problem, s.kv, s.sites, s.guess, 1e-4, 50, two_pi);
    CHECK(full.state.converged);
    CHECK(full.state.iterations == 3);  // one exact solve + two confirmations
    CHECK(full.solution.coeffs == one.solution.coeffs);

    for (int i = 0; i <= 64; ++i) {
        const double x = two_pi * i / 64.0;
        CHECK(std::abs(eval_spline(full.solution, x, 0) - std::cos(x)) < 1e-4);
    }
}

TEST_CASE("a fixed point stops after the confirming iterations") {
    const OdeProblem problem = cosine_problem();
    const double two_pi = 2.0 * 3.14159265358979323846;
    const Setup s = make_setup(5, 16, 0.0, two_pi, 1.0, 0.0);
    const NewtonResult fixed =
        newton_solve(problem, s.kv, s.sites, s.guess, 1e-4, 50, two_pi);
    REQUIRE(fixed.state.converged);

    const NewtonResult again =
        newton_solve(problem, s.kv, s.sites, fixed.solution, 1e-4, 50, two_pi);
    CHECK(again.state.converged);
    CHECK(again.state.iterations == 3);
    CHECK(again.solution.coeffs == fixed.solution.coeffs);
}

TEST_CASE("divergence carries the iteration index") {
    OdeProblem bad;
    bad.f = [](double, double, double) { return std::numeric_limits<double>::quiet_NaN(); };
    bad.df_dg = [](double, double, double) { return 0.0; };
    bad.df_ddg = [](double, double, double) { return 0.0; };
    bad.ic = {InitialCondition{1.0, 0.0, 1.0}, InitialCondition{0.0, 1.0, 0.0}};

    const Setup s = make_setup(4, 4, 0.0, 4.0, 1.0, 0.0);
    CHECK_THROWS_AS(
        static_cast<void>(newton_solve(bad, s.kv, s.sites, s.guess, 1e-4, 10, 4.0)),
        DivergenceError);
    try {
        static_cast<void>(newton_solve(bad, s.kv, s.sites, s.guess, 1e-4, 10, 4.0));
    } catch (const DivergenceError& e) {
        CHECK(e.iteration() == 1);
    }
}

TEST_CASE("newton argument validation") {
    const OdeProblem problem = cosine_problem();
    const Setup s = make_setup(4, 4, 0.0, 4.0, 1.0, 0.0);
    CHECK_THROWS_AS(
        static_cast<void>(newton_solve(problem, s.kv, s.sites, s.guess, 0.0, 10, 4.0)),
        std::invalid_argument);
    CHECK_THROWS_AS(
        static_cast<void>(newton_solve(problem, s.kv, s.sites, s.guess, 1e-4, 0, 4.0)),
        std::invalid_argument);
    CHECK_THROWS_AS(
        static_cast<void>(newton_solve(problem, s.kv, s.sites, s.guess, 1e-4, 10, 9.0)),
        std::invalid_argument);
}

TEST_CASE("quadratic contraction near the solution") {
    // Newton on a smooth nonlinear problem: the right-end discrepancy should
    // shrink superlinearly over the last iterations while above the noise
    // floor. Use a mildly nonlinear equation D^2 g = -g + 0.1 g^3.
    OdeProblem problem;
    problem.f = [](double, double g, double) { return -g + 0.1 * g * g * g; };
    problem.df_dg = [](double, double g, double) { return -1.0 + 0.3 * g * g; };
    problem.df_ddg = [](double, double, double) { return 0.0; };
    problem.ic = {InitialCondition{1.0, 0.0, 1.0}, InitialCondition{0.0, 1.0, 0.0}};

    const Setup s = make_setup(5, 12, 0.0, 3.0, 1.0, 0.0);
    std::vector<double> ends;
    Spline cur = s.guess;
    for (int r = 0; r < 8; ++r) {
        const NewtonResult step = newton_solve(problem, s.kv, s.sites, cur, 1e-30, 1, 3.0);
        cur = step.solution;
        ends.push_back(eval_spline(cur, 3.0, 0));
    }
    std::vector<double> errs;
    for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
        errs.push_back(std::abs(ends[i] - ends.back()));
    }
    // Ratios e_{r+1}/e_r must drop monotonically toward zero while the
    // discrepancy stays measurable.
    double prev_ratio = 1.0;
    int compared = 0;
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
        if (errs[i] < 1e-13 || errs[i + 1] == 0.0) break;
        const double ratio = errs[i + 1] / errs[i];
        CHECK(ratio < prev_ratio);
        prev_ratio = ratio;
        ++compared;
    }
    CHECK(compared >= 2);
}

TEST_CASE("linearly dependent initial conditions are rejected") {
    OdeProblem bad = cosine_problem();
    bad.ic = {InitialCondition{1.0, 2.0, 1.0}, InitialCondition{2.0, 4.0, 0.0}};
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    const Setup s = make_setup(4, 4, 0.0, 4.0, 1.0, 0.0);
    CHECK_THROWS_AS(
        static_cast<void>(newton_solve(bad, s.kv, s.sites, s.guess, 1e-4, 10, 4.0)),
        std::invalid_argument);
}
