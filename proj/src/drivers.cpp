#include "collox/drivers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "collox/errors.hpp"
#include "collox/interpolate.hpp"

namespace collox {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct PointEval {
    double f, df, d2f;
};

PointEval eval_all(const Spline& s, double x) {
    thread_local LocalBasis lb;
    eval_basis_into(lb, s.knots, x, 3);
    PointEval out{0.0, 0.0, 0.0};
    for (int i = 0; i < lb.order; ++i) {
        const double a = s.coeffs[lb.first + i];
        out.f += a * lb.at(0, i);
        out.df += a * lb.at(1, i);
        out.d2f += a * lb.at(2, i);
    }
    return out;
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::Original:
            return "original";
        case Method::Expanding:
            return "expanding";
        case Method::Segmented:
            return "segmented";
    }
    return "?";
}

Method method_from_string(const std::string& name) {
    if (name == "original") return Method::Original;
    if (name == "expanding") return Method::Expanding;
    if (name == "segmented") return Method::Segmented;
    throw std::invalid_argument("unknown method '" + name +
                                "' (expected original|expanding|segmented)");
}

void validate(const SolverConfig& cfg) {
    if (cfg.k < 3 || cfg.k > 20) {
        throw std::invalid_argument("SolverConfig: k must lie in [3, 20]");
    }
    if (cfg.l < 1) {
        throw std::invalid_argument("SolverConfig: l must be at least 1");
    }
    if (!(cfg.a < cfg.b)) {
        throw std::invalid_argument("SolverConfig: range requires a < b");
    }
    if (!(cfg.tol > 0.0)) {
        throw std::invalid_argument("SolverConfig: tol must be positive");
    }
    if (cfg.iter_max < 1) {
        throw std::invalid_argument("SolverConfig: iter_max must be at least 1");
    }
    if (cfg.w < 1 || cfg.l % cfg.w != 0) {
        throw std::invalid_argument("SolverConfig: w must divide l and be >= 1");
    }
    if (cfg.method == Method::Original && cfg.w != 1) {
        throw std::invalid_argument("SolverConfig: w must be 1 for the original method");
    }
    if (cfg.samples_per_interval < 1) {
        throw std::invalid_argument("SolverConfig: samples_per_interval must be at least 1");
    }
}

int PiecewiseSolution::piece_index(double x) const {
    if (pieces.empty() || !(x >= a() && x <= b())) {
        throw std::out_of_range("PiecewiseSolution: x outside the covered range");
    }
    int lo = 0;
    int hi = static_cast<int>(pieces.size()) - 1;
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (x < pieces[mid].hi) {
            hi = mid;
        } else if (x > pieces[mid].hi) {
            lo = mid + 1;
        } else {
            // At an interior join prefer the right piece, at b the last one.
            lo = (mid + 1 <= hi) ? mid + 1 : mid;
        }
    }
    return lo;
}

double PiecewiseSolution::eval(double x, int deriv) const {
    return eval_spline(pieces[piece_index(x)].spline, x, deriv);
}

double equation_residual(const OdeProblem& problem, const PiecewiseSolution& s, double x) {
    const PointEval e = eval_all(s.pieces[s.piece_index(x)].spline, x);
    return e.d2f - problem.f(x, e.f, e.df);
}

std::vector<SamplePoint> sample_solution(const OdeProblem& problem, const PiecewiseSolution& s,
                                         int samples_per_interval, Exec exec) {
    // Grid: every breakpoint of every piece plus `samples_per_interval`
    // uniform interior points per interval; joins are emitted once.
    std::vector<double> xs;
    std::vector<int> piece_of;
    for (std::size_t p = 0; p < s.pieces.size(); ++p) {
        const BreakSequence& breaks = s.pieces[p].spline.knots.breaks;
        if (p == 0) {
            xs.push_back(breaks.points.front());
            piece_of.push_back(0);
        }
        for (int i = 0; i < breaks.intervals(); ++i) {
            const double lo = breaks.points[i];
            const double hi = breaks.points[i + 1];
            for (int j = 1; j <= samples_per_interval; ++j) {
                xs.push_back(lo + j * (hi - lo) / (samples_per_interval + 1));
                piece_of.push_back(static_cast<int>(p));
            }
            xs.push_back(hi);
            piece_of.push_back(static_cast<int>(p));
        }
    }

    std::vector<SamplePoint> out(xs.size());
    const auto eval_one = [&](std::size_t i) {
        const double x = xs[i];
        const PointEval e = eval_all(s.pieces[piece_of[i]].spline, x);
        out[i] = SamplePoint{x, e.f, e.df, e.d2f, e.d2f - problem.f(x, e.f, e.df)};
    };
    if (detail::use_parallel(exec, xs.size() * detail::kCostSamplePoint)) {
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < xs.size(); ++i) {
            eval_one(i);
        }
    } else {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            eval_one(i);
        }
    }
    return out;
}

int SolveReport::total_iterations() const {
    return std::accumulate(iterations_per_segment.begin(), iterations_per_segment.end(), 0);
}

double flop_estimate(int k, int n_iters, int l) {
    const double kk = static_cast<double>(k);
    return (kk * kk * kk + kk * kk + kk) * static_cast<double>(n_iters) * static_cast<double>(l);
}

namespace {

struct PieceSetup {
    BreakSequence sub;
    KnotVector kv;
    DatasiteSet sites;
    BasisCache cache;
    std::vector<double> guess_pts;  // left end, datasites, right end
    std::optional<BandedInterpolator> guess_interp;
};

// Knots, datasites, basis tables, and the factored guess-interpolation matrix
// for every window, built ahead of the sequential Newton marches. The pieces
// are independent, so they are prepared in parallel when the policy allows;
// results are identical either way.
std::vector<PieceSetup> prepare_pieces(const BreakSequence& breaks, int k,
                                       const std::vector<std::pair<int, int>>& spans, Exec exec) {
    const CollocationPattern pattern = legendre_pattern(k - 2);
    std::vector<PieceSetup> setups(spans.size());
    std::size_t total_sites = 0;
    for (std::size_t i = 0; i < spans.size(); ++i) {
        setups[i].sub = breaks.slice(spans[i].first, spans[i].second);
        setups[i].kv = build_ode_knots(setups[i].sub, k);
        setups[i].sites = build_datasites(setups[i].sub, pattern);
        total_sites += setups[i].sites.tau.size();
        setups[i].guess_pts.reserve(setups[i].kv.dimension);
        setups[i].guess_pts.push_back(setups[i].sub.front());
        setups[i].guess_pts.insert(setups[i].guess_pts.end(), setups[i].sites.tau.begin(),
                                   setups[i].sites.tau.end());
        setups[i].guess_pts.push_back(setups[i].sub.back());
    }
    const auto prepare_one = [&](std::size_t i) {
        setups[i].cache = build_basis_cache(setups[i].kv, setups[i].sites, Exec::Serial);
        setups[i].guess_interp.emplace(setups[i].kv, setups[i].guess_pts);
    };
    if (detail::use_parallel(exec, total_sites * detail::kCostBasisEval)) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < setups.size(); ++i) {
            prepare_one(i);
        }
    } else {
        for (std::size_t i = 0; i < setups.size(); ++i) {
            prepare_one(i);
        }
    }
    return setups;
}

// The supposed starting solution of one piece, interpolated with the piece's
// prefactored matrix; identical arithmetic to initial_guess().
Spline make_guess(const PieceSetup& setup, double a, double g_a, double dg_a) {
    std::vector<double> vals(setup.guess_pts.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double x = setup.guess_pts[i];
        vals[i] = (g_a + dg_a * (x - a)) * (1.0 - std::tanh(x - a - 3.0)) / 2.0;
    }
    return setup.guess_interp->interpolate(vals);
}

void finish_report(const OdeProblem& problem, const SolverConfig& cfg, SolveReport& report) {
    const auto samples = sample_solution(problem, report.solution, cfg.samples_per_interval,
                                         cfg.exec);
    report.err_samples.reserve(samples.size());
    double worst = 0.0;
    for (const auto& sp : samples) {
        report.err_samples.emplace_back(sp.x, sp.err);
        worst = std::max(worst, std::abs(sp.err));
    }
    report.err_inf = worst;
}

}  // namespace

SolveReport solve_original(const OdeProblem& problem, const SolverConfig& cfg) {
    validate(cfg);
    validate(problem);
    if (cfg.method != Method::Original) {
        throw std::invalid_argument("solve_original: cfg.method must be original");
    }

    SolveReport report;
    FlopCount flops;
    const auto t0 = Clock::now();
    const BreakSequence breaks = build_uniform_breaks(cfg.a, cfg.b, cfg.l);
    const auto setups = prepare_pieces(breaks, cfg.k, {{0, cfg.l}}, cfg.exec);
    const PieceSetup& s = setups.front();
    const auto [g_a, dg_a] = ic_values(problem);
    const Spline guess = make_guess(s, cfg.a, g_a, dg_a);

    int iters = 0;
    const auto t_newton = Clock::now();
    try {
        NewtonResult res = newton_solve(problem, s.kv, s.sites, s.cache, guess, cfg.tol,
                                        cfg.iter_max, cfg.b, cfg.exec, &flops);
        report.newton_seconds = seconds_since(t_newton);
        iters = res.state.iterations;
        report.converged = res.state.converged;
        report.solution.pieces.push_back(Piece{cfg.a, cfg.b, std::move(res.solution)});
    } catch (const DivergenceError& e) {
        report.newton_seconds = seconds_since(t_newton);
        iters = e.iteration();
        report.converged = false;
        report.solution.pieces.push_back(Piece{cfg.a, cfg.b, guess});
    } catch (const SingularSystemError&) {
        report.newton_seconds = seconds_since(t_newton);
        report.converged = false;
        report.solution.pieces.push_back(Piece{cfg.a, cfg.b, guess});
    }
    report.wall_seconds = seconds_since(t0);
    report.iterations_per_segment.push_back(iters);
    report.flop_estimate = flop_estimate(cfg.k, iters, cfg.l);
    report.counted_flops = flops.value;
    finish_report(problem, cfg, report);
    return report;
}

SolveReport solve_expanding(const OdeProblem& problem, const SolverConfig& cfg) {
    validate(cfg);
    validate(problem);
    if (cfg.method != Method::Expanding) {
        throw std::invalid_argument("solve_expanding: cfg.method must be expanding");
    }

    SolveReport report;
    FlopCount flops;
    double model = 0.0;
    const auto t0 = Clock::now();
    const BreakSequence breaks = build_uniform_breaks(cfg.a, cfg.b, cfg.l);
    const auto [g_a, dg_a] = ic_values(problem);
    const int step = cfg.l / cfg.w;

    std::vector<std::pair<int, int>> spans;
    for (int stage = 1; stage <= cfg.w; ++stage) {
        spans.emplace_back(0, stage * step);
    }
    const auto setups = prepare_pieces(breaks, cfg.k, spans, cfg.exec);

    Spline furthest;  // best approximation reached so far
    bool ok = true;
    for (int stage = 1; stage <= cfg.w && ok; ++stage) {
        const int li = stage * step;
        const PieceSetup& setup = setups[stage - 1];
        const KnotVector& kv = setup.kv;
        const DatasiteSet& sites = setup.sites;
        const BreakSequence& sub = setup.sub;

        Spline start;
        if (stage == 1) {
            start = make_guess(setup, cfg.a, g_a, dg_a);
        } else {
            // Carry the previous coefficients positionally, zero-fill the new
            // trailing ones. B-splines near the old right end have changed
            // shape; the misalignment washes out in the next iterations.
            std::vector<double> coeffs(kv.dimension, 0.0);
            std::copy(furthest.coeffs.begin(), furthest.coeffs.end(), coeffs.begin());
            start = Spline{kv, std::move(coeffs)};
        }
        if (stage == 1) {
            furthest = start;
        }

        const auto t_newton = Clock::now();
        try {
            NewtonResult res = newton_solve(problem, kv, sites, setup.cache, std::move(start),
                                            cfg.tol, cfg.iter_max, sub.back(), cfg.exec, &flops);
            report.newton_seconds += seconds_since(t_newton);
            report.iterations_per_segment.push_back(res.state.iterations);
            model += flop_estimate(cfg.k, res.state.iterations, li);
            furthest = std::move(res.solution);
            ok = res.state.converged;
        } catch (const DivergenceError& e) {
            report.newton_seconds += seconds_since(t_newton);
            report.iterations_per_segment.push_back(e.iteration());
            model += flop_estimate(cfg.k, e.iteration(), li);
            ok = false;
        } catch (const SingularSystemError&) {
            report.newton_seconds += seconds_since(t_newton);
            report.iterations_per_segment.push_back(0);
            ok = false;
        }
    }
    report.wall_seconds = seconds_since(t0);
    report.converged = ok && static_cast<int>(report.iterations_per_segment.size()) == cfg.w;
    report.solution.pieces.push_back(Piece{cfg.a, furthest.b(), std::move(furthest)});
    report.flop_estimate = model;
    report.counted_flops = flops.value;
    finish_report(problem, cfg, report);
    return report;
}

SolveReport solve_segmented(const OdeProblem& problem, const SolverConfig& cfg) {
    validate(cfg);
    validate(problem);
    if (cfg.method != Method::Segmented) {
        throw std::invalid_argument("solve_segmented: cfg.method must be segmented");
    }

    SolveReport report;
    FlopCount flops;
    double model = 0.0;
    const auto t0 = Clock::now();
    const BreakSequence breaks = build_uniform_breaks(cfg.a, cfg.b, cfg.l);
    const int step = cfg.l / cfg.w;

    std::vector<std::pair<int, int>> spans;
    for (int seg = 1; seg <= cfg.w; ++seg) {
        spans.emplace_back((seg - 1) * step, seg * step);
    }
    const auto setups = prepare_pieces(breaks, cfg.k, spans, cfg.exec);

    auto [g_left, dg_left] = ic_values(problem);
    bool ok = true;
    for (int seg = 1; seg <= cfg.w && ok; ++seg) {
        const PieceSetup& setup = setups[seg - 1];
        const KnotVector& kv = setup.kv;
        const DatasiteSet& sites = setup.sites;
        const BreakSequence& sub = setup.sub;

        // Piece 1 keeps the caller's conditions; later pieces inherit value
        // and slope from their predecessor at the shared breakpoint.
        OdeProblem piece_problem = problem;
        if (seg > 1) {
            piece_problem.ic = {InitialCondition{1.0, 0.0, g_left},
                                InitialCondition{0.0, 1.0, dg_left}};
        }
        Spline start = make_guess(setup, sub.front(), g_left, dg_left);

        const auto t_newton = Clock::now();
        try {
            NewtonResult res = newton_solve(piece_problem, kv, sites, setup.cache, std::move(start),
                                            cfg.tol, cfg.iter_max, sub.back(), cfg.exec, &flops);
            report.newton_seconds += seconds_since(t_newton);
            report.iterations_per_segment.push_back(res.state.iterations);
            model += flop_estimate(cfg.k, res.state.iterations, step);
            ok = res.state.converged;
            g_left = eval_spline(res.solution, sub.back(), 0);
            dg_left = eval_spline(res.solution, sub.back(), 1);
            report.solution.pieces.push_back(Piece{sub.front(), sub.back(), std::move(res.solution)});
        } catch (const DivergenceError& e) {
            report.newton_seconds += seconds_since(t_newton);
            report.iterations_per_segment.push_back(e.iteration());
            model += flop_estimate(cfg.k, e.iteration(), step);
            ok = false;
            if (report.solution.pieces.empty()) {
                start = make_guess(setup, sub.front(), g_left, dg_left);
                report.solution.pieces.push_back(Piece{sub.front(), sub.back(), std::move(start)});
            }
        } catch (const SingularSystemError&) {
            report.newton_seconds += seconds_since(t_newton);
            report.iterations_per_segment.push_back(0);
            ok = false;
            if (report.solution.pieces.empty()) {
                Spline fallback = make_guess(setup, sub.front(), g_left, dg_left);
                report.solution.pieces.push_back(
                    Piece{sub.front(), sub.back(), std::move(fallback)});
            }
        }
    }
    report.wall_seconds = seconds_since(t0);
    report.converged = ok && static_cast<int>(report.iterations_per_segment.size()) == cfg.w;
    report.flop_estimate = model;
    report.counted_flops = flops.value;
    finish_report(problem, cfg, report);
    return report;
}

SolveReport solve(const OdeProblem& problem, const SolverConfig& cfg) {
    switch (cfg.method) {
        case Method::Original:
            return solve_original(problem, cfg);
        case Method::Expanding:
            return solve_expanding(problem, cfg);
        case Method::Segmented:
            return solve_segmented(problem, cfg);
    }
    throw std::invalid_argument("solve: unknown method");
}

}  // namespace collox
