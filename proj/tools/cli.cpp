#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "collox/analysis.hpp"
#include "collox/drivers.hpp"
#include "collox/errors.hpp"
#include "collox/vdp.hpp"

namespace collox_cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace collox;

constexpr double kTwoPi = 6.283185307179586;

/// Shortest decimal form that round-trips to the same double.
std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt(int v) { return std::to_string(v); }

// ---------------------------------------------------------------------------
// Run configuration: one solver run of either built-in problem, or a sweep
// over axes of it.

struct RunConfig {
    std::string problem = "vdp";  // vdp | cos
    std::vector<double> mu{1.0};
    double g0 = 1.0;
    double dg0 = 0.0;
    std::vector<int> k{5};
    std::vector<int> l{160};
    std::vector<int> w{1};
    std::vector<std::string> method{"original"};
    std::vector<int> fixed_iters{};  // empty: run to tolerance
    double a = 0.0;
    double b = 40.0;
    double tol = 1e-4;
    int iter_max = 500;
    int samples_per_interval = 16;
    std::string out_dir = ".";
    int jobs = 1;
    std::optional<unsigned> seed;  // sweep execution shuffling
};

struct OneRun {
    std::string problem;
    double mu, g0, dg0;
    int k, l, w;
    std::string method;
    std::optional<int> fixed_iters;
    double a, b, tol;
    int iter_max, samples_per_interval;
};

OdeProblem make_problem(const OneRun& run) {
    if (run.problem == "vdp") {
        return vdp_problem(VdpParams{run.mu, run.g0, run.dg0});
    }
    if (run.problem == "cos") {
        OdeProblem p;
        p.f = [](double, double g, double) { return -g; };
        p.df_dg = [](double, double, double) { return -1.0; };
        p.df_ddg = [](double, double, double) { return 0.0; };
        p.ic = {InitialCondition{1.0, 0.0, run.g0}, InitialCondition{0.0, 1.0, run.dg0}};
        return p;
    }
    throw std::invalid_argument("problem must be vdp or cos, got '" + run.problem + "'");
}

SolverConfig make_solver_config(const OneRun& run) {
    SolverConfig cfg;
    cfg.k = run.k;
    cfg.l = run.l;
    cfg.a = run.a;
    cfg.b = run.b;
    cfg.w = run.w;
    cfg.method = method_from_string(run.method);
    cfg.samples_per_interval = run.samples_per_interval;
    if (run.fixed_iters) {
        // A tolerance no computation attains: the run executes exactly
        // iter_max Newton iterations (used by the cost-grid presets).
        cfg.tol = 5e-324;
        cfg.iter_max = *run.fixed_iters;
    } else {
        cfg.tol = run.tol;
        cfg.iter_max = run.iter_max;
    }
    return cfg;
}

std::vector<OneRun> expand(const RunConfig& rc) {
    std::vector<OneRun> runs;
    const std::vector<std::optional<int>> fixed =
        rc.fixed_iters.empty()
            ? std::vector<std::optional<int>>{std::nullopt}
            : [&] {
                  std::vector<std::optional<int>> v;
                  for (int n : rc.fixed_iters) v.emplace_back(n);
                  return v;
              }();
    for (const std::string& method : rc.method) {
        for (double mu : rc.mu) {
            for (int k : rc.k) {
                for (int l : rc.l) {
                    for (int w : rc.w) {
                        for (const auto& fi : fixed) {
                            OneRun run{rc.problem, mu,        rc.g0, rc.dg0, k, l, w, method, fi,
                                       rc.a,       rc.b,      rc.tol, rc.iter_max,
                                       rc.samples_per_interval};
                            runs.push_back(run);
                        }
                    }
                }
            }
        }
    }
    return runs;
}

// ---------------------------------------------------------------------------
// Built-in named parameter sets (see README for what each grid exercises).
// A preset name may carry overrides: "table3.2:mu=0.05,l=20".

void apply_override(RunConfig& rc, const std::string& key, const std::string& value) {
    const auto as_double = [&] { return std::stod(value); };
    const auto as_int = [&] { return std::stoi(value); };
    if (key == "mu") {
        rc.mu = {as_double()};
    } else if (key == "k") {
        rc.k = {as_int()};
    } else if (key == "l") {
        rc.l = {as_int()};
    } else if (key == "w") {
        rc.w = {as_int()};
    } else if (key == "method") {
        rc.method = {value};
    } else if (key == "tol") {
        rc.tol = as_double();
    } else if (key == "iter_max") {
        rc.iter_max = as_int();
    } else {
        throw std::invalid_argument("preset override: unknown key '" + key + "'");
    }
}

RunConfig load_preset(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    RunConfig rc;
    if (name == "table3.1") {
        // Cost grid: CPU seconds to complete a fixed iteration budget.
        rc.problem = "vdp";
        rc.mu = {1.0};
        rc.k = {4, 5, 6, 7};
        rc.l = {20, 40, 80, 160};
        rc.fixed_iters = {10, 100};
        rc.method = {"original"};
        rc.a = 0.0;
        rc.b = 40.0;
    } else if (name == "table3.2") {
        // Small-mu iteration counts.
        rc.problem = "vdp";
        rc.mu = {0.01, 0.05, 0.25};
        rc.k = {5};
        rc.l = {20, 40};
        rc.method = {"original"};
        rc.a = 0.0;
        rc.b = 40.0;
        rc.iter_max = 2000;
    } else if (name == "table5.2") {
        // Window sweep of the segmented method at mu = 3.
        rc.problem = "vdp";
        rc.mu = {3.0};
        rc.k = {5};
        rc.l = {160};
        rc.w = {2, 4, 8, 16, 20, 40, 80, 160};
        rc.method = {"segmented"};
        rc.a = 0.0;
        rc.b = 20.0;
        rc.iter_max = 2000;
    } else if (name == "table5.2-original") {
        // Whole-range baseline for the window sweep.
        rc.problem = "vdp";
        rc.mu = {3.0};
        rc.k = {5};
        rc.l = {160};
        rc.w = {1};
        rc.method = {"original"};
        rc.a = 0.0;
        rc.b = 20.0;
        rc.iter_max = 6000;
    } else if (name == "fig5.1") {
        // Large-mu segmented feasibility run.
        rc.problem = "vdp";
        rc.mu = {20.0};
        rc.k = {5};
        rc.l = {320};
        rc.w = {40};
        rc.method = {"segmented"};
        rc.a = 0.0;
        rc.b = 40.0;
    } else if (name == "cos-order") {
        // Mesh-refinement rows of the linear test problem.
        rc.problem = "cos";
        rc.k = {4, 5, 6};
        rc.l = {8, 16, 32};
        rc.method = {"original"};
        rc.a = 0.0;
        rc.b = kTwoPi;
        rc.tol = 1e-10;
        rc.iter_max = 50;
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("preset override '" + item + "' is not key=value");
            }
            apply_override(rc, item.substr(0, eq), item.substr(eq + 1));
        }
    }
    return rc;
}

// ---------------------------------------------------------------------------
// JSON config files mirror the flags. Unknown keys are rejected.

void merge_config_file(RunConfig& rc, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file '" + path + "'");
    }
    json j = json::parse(in);
    const auto int_list = [](const json& v) {
        std::vector<int> out;
        if (v.is_array()) {
            for (const auto& e : v) out.push_back(e.get<int>());
        } else {
            out.push_back(v.get<int>());
        }
        return out;
    };
    const auto double_list = [](const json& v) {
        std::vector<double> out;
        if (v.is_array()) {
            for (const auto& e : v) out.push_back(e.get<double>());
        } else {
            out.push_back(v.get<double>());
        }
        return out;
    };
    for (const auto& [key, value] : j.items()) {
        if (key == "problem") {
            rc.problem = value.get<std::string>();
        } else if (key == "mu") {
            rc.mu = double_list(value);
        } else if (key == "g0") {
            rc.g0 = value.get<double>();
        } else if (key == "dg0") {
            rc.dg0 = value.get<double>();
        } else if (key == "k") {
            rc.k = int_list(value);
        } else if (key == "l") {
            rc.l = int_list(value);
        } else if (key == "w") {
            rc.w = int_list(value);
        } else if (key == "method") {
            if (value.is_array()) {
                rc.method.clear();
                for (const auto& e : value) rc.method.push_back(e.get<std::string>());
            } else {
                rc.method = {value.get<std::string>()};
            }
        } else if (key == "fixed_iters") {
            rc.fixed_iters = int_list(value);
        } else if (key == "range") {
            rc.a = value.at(0).get<double>();
            rc.b = value.at(1).get<double>();
        } else if (key == "tol") {
            rc.tol = value.get<double>();
        } else if (key == "iter_max") {
            rc.iter_max = value.get<int>();
        } else if (key == "samples_per_interval") {
            rc.samples_per_interval = value.get<int>();
        } else if (key == "out") {
            rc.out_dir = value.get<std::string>();
        } else if (key == "jobs") {
            rc.jobs = value.get<int>();
        } else if (key == "seed") {
            rc.seed = value.get<unsigned>();
        } else {
            throw std::invalid_argument("config file: unknown key '" + key + "'");
        }
    }
}

// ---------------------------------------------------------------------------
// Report serialization.

json report_json(const OneRun& run, const SolveReport& report) {
    json j;
    j["problem"] = run.problem;
    j["mu"] = run.mu;
    j["k"] = run.k;
    j["l"] = run.l;
    j["w"] = run.w;
    j["method"] = run.method;
    j["N"] = report.total_iterations();
    j["iterations_per_segment"] = report.iterations_per_segment;
    j["converged"] = report.converged;
    j["wall_seconds"] = report.wall_seconds;
    j["newton_seconds"] = report.newton_seconds;
    j["flop_estimate"] = report.flop_estimate;
    j["counted_flops"] = report.counted_flops;
    j["err_inf"] = report.err_inf;
    j["range"] = {run.a, run.b};
    j["tol"] = run.fixed_iters ? 0.0 : run.tol;
    return j;
}

const char* kSweepHeader =
    "problem,mu,k,l,w,method,N,iterations_per_segment,converged,wall_seconds,newton_seconds,"
    "flop_estimate,counted_flops,err_inf,range_a,range_b,tol";

std::string sweep_row(const OneRun& run, const SolveReport& report) {
    std::string iters;
    for (std::size_t i = 0; i < report.iterations_per_segment.size(); ++i) {
        if (i > 0) iters += ';';
        iters += std::to_string(report.iterations_per_segment[i]);
    }
    std::string row;
    row += run.problem;
    row += ',' + fmt(run.mu);
    row += ',' + fmt(run.k);
    row += ',' + fmt(run.l);
    row += ',' + fmt(run.w);
    row += ',' + run.method;
    row += ',' + fmt(report.total_iterations());
    row += ',' + iters;
    row += std::string(",") + (report.converged ? "true" : "false");
    row += ',' + fmt(report.wall_seconds);
    row += ',' + fmt(report.newton_seconds);
    row += ',' + fmt(report.flop_estimate);
    row += ',' + std::to_string(report.counted_flops);
    row += ',' + fmt(report.err_inf);
    row += ',' + fmt(run.a);
    row += ',' + fmt(run.b);
    row += ',' + fmt(run.fixed_iters ? 0.0 : run.tol);
    return row;
}

SolveReport run_one(const OneRun& run, Exec exec) {
    const OdeProblem problem = make_problem(run);
    SolverConfig cfg = make_solver_config(run);
    cfg.exec = exec;
    return solve(problem, cfg);
}

// ---------------------------------------------------------------------------
// solve subcommand.

int cmd_solve(const RunConfig& rc) {
    const auto runs = expand(rc);
    if (runs.size() != 1) {
        std::cerr << "solve: configuration expands to " << runs.size()
                  << " runs; use sweep for parameter grids\n";
        return 1;
    }
    const OneRun& run = runs.front();
    SolverConfig cfg = make_solver_config(run);
    validate(cfg);  // report flag problems before doing any work

    const OdeProblem problem = make_problem(run);
    const SolveReport report = solve(problem, cfg);

    fs::create_directories(rc.out_dir);
    {
        std::ofstream csv(fs::path(rc.out_dir) / "solution.csv");
        csv << "x,f,df,d2f,err\n";
        const auto samples =
            sample_solution(problem, report.solution, cfg.samples_per_interval, cfg.exec);
        for (const auto& s : samples) {
            csv << fmt(s.x) << ',' << fmt(s.f) << ',' << fmt(s.df) << ',' << fmt(s.d2f) << ','
                << fmt(s.err) << '\n';
        }
    }
    {
        std::ofstream csv(fs::path(rc.out_dir) / "phase.csv");
        csv << "g,dg\n";
        const PhaseSamples phase = phase_samples(report.solution, cfg.samples_per_interval);
        for (const auto& [g, dg] : phase.points) {
            csv << fmt(g) << ',' << fmt(dg) << '\n';
        }
    }
    {
        std::ofstream out(fs::path(rc.out_dir) / "report.json");
        out << report_json(run, report).dump(2) << '\n';
    }
    std::cout << (report.converged ? "converged" : "did not converge") << " after "
              << report.total_iterations() << " iterations, err_inf = " << fmt(report.err_inf)
              << "\n";
    return report.converged ? 0 : 2;
}

// ---------------------------------------------------------------------------
// sweep subcommand.

int cmd_sweep(const RunConfig& rc) {
    auto runs = expand(rc);
    if (runs.empty()) {
        std::cerr << "sweep: configuration expands to no runs\n";
        return 1;
    }
    // Drop grid combinations that are structurally impossible (w not dividing
    // l, or w > 1 under the original method); fail only if nothing is left.
    {
        std::vector<OneRun> valid;
        for (const auto& run : runs) {
            try {
                validate(make_solver_config(run));
                static_cast<void>(make_problem(run));
                valid.push_back(run);
            } catch (const std::invalid_argument& e) {
                if (runs.size() == 1) {
                    throw;
                }
            }
        }
        if (valid.empty()) {
            std::cerr << "sweep: no valid configuration in the grid\n";
            return 1;
        }
        if (valid.size() != runs.size()) {
            std::cout << "skipped " << runs.size() - valid.size()
                      << " invalid grid combinations\n";
        }
        runs = std::move(valid);
    }

    // Execution order may be shuffled (load balancing across jobs); rows are
    // written in configuration order regardless.
    std::vector<std::size_t> order(runs.size());
    std::iota(order.begin(), order.end(), 0);
    unsigned seed = rc.seed.value_or(0);
    if (const char* env = std::getenv("COLLOX_SEED"); env != nullptr && !rc.seed) {
        seed = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    }
    if (seed != 0) {
        std::mt19937 rng(seed);
        std::shuffle(order.begin(), order.end(), rng);
    }

    std::vector<std::string> rows(runs.size());
    const Exec exec = rc.jobs > 1 ? Exec::Serial : Exec::Auto;
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(rc.jobs) if (rc.jobs > 1)
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::size_t idx = order[i];
        try {
            const SolveReport report = run_one(runs[idx], exec);
            rows[idx] = sweep_row(runs[idx], report);
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    fs::create_directories(rc.out_dir);
    std::ofstream csv(fs::path(rc.out_dir) / "sweep.csv");
    csv << kSweepHeader << '\n';
    for (const auto& row : rows) {
        csv << row << '\n';
    }
    std::cout << "wrote " << runs.size() << " rows\n";
    return 0;
}

// ---------------------------------------------------------------------------
// analyze subcommand.

struct SweepRow {
    std::string problem;
    double mu;
    int k, l, w;
    std::string method;
    int n;
    bool converged;
    double wall_seconds;
    double flop_estimate;
    double err_inf;
    double range_a, range_b;
};

std::vector<SweepRow> read_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("'" + path + "' is empty");
    }
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    const auto col = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw std::invalid_argument("'" + path + "' lacks column '" + name + "'");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_problem = col("problem"), c_mu = col("mu"), c_k = col("k"),
                      c_l = col("l"), c_w = col("w"), c_method = col("method"), c_n = col("N"),
                      c_conv = col("converged"), c_wall = col("wall_seconds"),
                      c_flop = col("flop_estimate"), c_err = col("err_inf"),
                      c_ra = col("range_a"), c_rb = col("range_b");

    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        SweepRow r;
        r.problem = cells.at(c_problem);
        r.mu = std::stod(cells.at(c_mu));
        r.k = std::stoi(cells.at(c_k));
        r.l = std::stoi(cells.at(c_l));
        r.w = std::stoi(cells.at(c_w));
        r.method = cells.at(c_method);
        r.n = std::stoi(cells.at(c_n));
        r.converged = cells.at(c_conv) == "true";
        r.wall_seconds = std::stod(cells.at(c_wall));
        r.flop_estimate = std::stod(cells.at(c_flop));
        r.err_inf = std::stod(cells.at(c_err));
        r.range_a = std::stod(cells.at(c_ra));
        r.range_b = std::stod(cells.at(c_rb));
        rows.push_back(std::move(r));
    }
    return rows;
}

int cmd_analyze(const std::string& input, const std::string& kind, const std::string& out_dir,
                std::optional<double> n_ori_flag, std::optional<double> lambda_flag,
                std::optional<double> n_min_flag) {
    json result;
    result["kind"] = kind;
    if (kind == "optimal-w") {
        if (!lambda_flag || !n_ori_flag || !n_min_flag) {
            std::cerr << "analyze: optimal-w needs --lambda, --n-ori and --n-min\n";
            return 1;
        }
        result["lambda"] = *lambda_flag;
        result["n_ori"] = *n_ori_flag;
        result["n_min"] = *n_min_flag;
        result["optimal_w"] = optimal_w(*lambda_flag, *n_ori_flag, *n_min_flag);
    } else {
        const auto rows = read_sweep_csv(input);
        if (kind == "iteration-model") {
            std::vector<std::pair<double, double>> points;
            std::optional<double> n_ori = n_ori_flag;
            for (const auto& r : rows) {
                if (r.method == "segmented" && r.converged && r.w > 1) {
                    points.emplace_back(r.w, r.n);
                }
                if (r.method == "original" && r.converged && !n_ori_flag) {
                    n_ori = r.n;
                }
            }
            if (!n_ori) {
                std::cerr << "analyze: no original-method row found; pass --n-ori\n";
                return 2;
            }
            try {
                const IterationModel model = fit_iteration_model(points, *n_ori);
                result["lambda"] = model.lambda;
                result["n_min"] = model.n_min;
                result["n_ori"] = model.n_ori;
                result["fit_residual"] = model.fit_residual;
                result["dropped_points"] = model.dropped_points;
                result["points_used"] = points.size() - model.dropped_points;
                result["optimal_w"] = optimal_w(model.lambda, model.n_ori, model.n_min);
                result["optimal_w_unit_lambda"] = optimal_w(1.0, model.n_ori, model.n_min);
            } catch (const InsufficientDataError& e) {
                std::cerr << "analyze: " << e.what() << "\n";
                return 2;
            }
        } else if (kind == "mu-cost") {
            std::vector<std::pair<double, double>> points;
            for (const auto& r : rows) {
                if (r.converged && r.wall_seconds > 0.0) {
                    points.emplace_back(r.mu, r.wall_seconds);
                }
            }
            try {
                const PowerFit fitted = fit_mu_cost(points);
                result["exponent"] = fitted.exponent;
                result["prefactor"] = fitted.prefactor;
                result["fit_residual"] = fitted.fit_residual;
                result["points_used"] = points.size();
            } catch (const std::invalid_argument& e) {
                std::cerr << "analyze: " << e.what() << "\n";
                return 2;
            }
        } else if (kind == "order") {
            std::vector<std::pair<double, double>> points;
            for (const auto& r : rows) {
                if (r.converged && r.err_inf > 0.0) {
                    points.emplace_back((r.range_b - r.range_a) / r.l, r.err_inf);
                }
            }
            try {
                result["order"] = convergence_order(points);
                result["points_used"] = points.size();
            } catch (const std::invalid_argument& e) {
                std::cerr << "analyze: " << e.what() << "\n";
                return 2;
            }
        } else {
            std::cerr << "analyze: unknown kind '" << kind << "'\n";
            return 1;
        }
    }
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / "analysis.json");
    out << result.dump(2) << '\n';
    std::cout << result.dump(2) << '\n';
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"B-spline collocation solver for second-order initial value problems"};
    app.require_subcommand(1);

    RunConfig rc;
    std::string preset;
    std::string config_path;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--preset", preset, "named parameter set (name[:key=val,...])");
        cmd->add_option("--config", config_path, "JSON config file (flags override it)");
        cmd->add_option("--problem", rc.problem, "vdp | cos");
        cmd->add_option("--mu", rc.mu, "damping parameter(s)");
        cmd->add_option("--g0", rc.g0, "g(a)");
        cmd->add_option("--dg0", rc.dg0, "Dg(a)");
        cmd->add_option("--k", rc.k, "spline order(s)");
        cmd->add_option("--l", rc.l, "interval count(s)");
        cmd->add_option("--w", rc.w, "window count(s)");
        cmd->add_option("--method", rc.method, "original | expanding | segmented");
        cmd->add_option("--fixed-iters", rc.fixed_iters,
                        "run exactly this many iterations instead of a tolerance");
        cmd->add_option("--range", [&rc](const std::vector<std::string>& vals) {
                   if (vals.size() != 2) return false;
                   rc.a = std::stod(vals[0]);
                   rc.b = std::stod(vals[1]);
                   return true;
               },
               "solution range A B")
            ->expected(2);
        cmd->add_option("--tol", rc.tol, "convergence tolerance");
        cmd->add_option("--iter-max", rc.iter_max, "iteration cap per segment");
        cmd->add_option("--samples-per-interval", rc.samples_per_interval,
                        "interior sample points per interval");
        cmd->add_option("--out", rc.out_dir, "output directory");
        cmd->add_option("--jobs", rc.jobs, "parallel sweep workers");
    };

    CLI::App* solve_cmd = app.add_subcommand("solve", "run one collocation solve");
    add_common(solve_cmd);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter grid");
    add_common(sweep_cmd);

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "fit models to sweep output");
    std::string an_input, an_kind = "iteration-model", an_out = ".";
    double an_n_ori = 0.0, an_lambda = 0.0, an_n_min = 0.0;
    bool has_n_ori = false, has_lambda = false, has_n_min = false;
    analyze_cmd->add_option("--input", an_input, "sweep CSV to analyze");
    analyze_cmd->add_option("--kind", an_kind, "iteration-model | mu-cost | order | optimal-w");
    analyze_cmd->add_option("--out", an_out, "output directory");
    analyze_cmd->add_option("--n-ori", an_n_ori, "whole-range iteration count")
        ->each([&](const std::string&) { has_n_ori = true; });
    analyze_cmd->add_option("--lambda", an_lambda, "fitted exponent")
        ->each([&](const std::string&) { has_lambda = true; });
    analyze_cmd->add_option("--n-min", an_n_min, "per-segment iteration floor")
        ->each([&](const std::string&) { has_n_min = true; });

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        // Precedence: preset < config file < flags. Flags were parsed into rc
        // already, so rebuild from the bottom and re-apply.
        if (solve_cmd->parsed() || sweep_cmd->parsed()) {
            CLI::App* cmd = solve_cmd->parsed() ? solve_cmd : sweep_cmd;
            RunConfig base;
            if (!preset.empty()) {
                base = load_preset(preset);
            }
            if (!config_path.empty()) {
                merge_config_file(base, config_path);
            }
            // Anything the user typed wins over preset/file values.
            if (!cmd->get_option("--problem")->empty()) base.problem = rc.problem;
            if (!cmd->get_option("--mu")->empty()) base.mu = rc.mu;
            if (!cmd->get_option("--g0")->empty()) base.g0 = rc.g0;
            if (!cmd->get_option("--dg0")->empty()) base.dg0 = rc.dg0;
            if (!cmd->get_option("--k")->empty()) base.k = rc.k;
            if (!cmd->get_option("--l")->empty()) base.l = rc.l;
            if (!cmd->get_option("--w")->empty()) base.w = rc.w;
            if (!cmd->get_option("--method")->empty()) base.method = rc.method;
            if (!cmd->get_option("--fixed-iters")->empty()) base.fixed_iters = rc.fixed_iters;
            if (!cmd->get_option("--range")->empty()) {
                base.a = rc.a;
                base.b = rc.b;
            }
            if (!cmd->get_option("--tol")->empty()) base.tol = rc.tol;
            if (!cmd->get_option("--iter-max")->empty()) base.iter_max = rc.iter_max;
            if (!cmd->get_option("--samples-per-interval")->empty()) {
                base.samples_per_interval = rc.samples_per_interval;
            }
            if (!cmd->get_option("--out")->empty()) base.out_dir = rc.out_dir;
            if (!cmd->get_option("--jobs")->empty()) base.jobs = rc.jobs;
            return solve_cmd->parsed() ? cmd_solve(base) : cmd_sweep(base);
        }
        if (analyze_cmd->parsed()) {
            return cmd_analyze(an_input, an_kind, an_out,
                               has_n_ori ? std::optional<double>(an_n_ori) : std::nullopt,
                               has_lambda ? std::optional<double>(an_lambda) : std::nullopt,
                               has_n_min ? std::optional<double>(an_n_min) : std::nullopt);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace collox_cli
