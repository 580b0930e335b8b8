#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("collox");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return collox_cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "collox_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

json load_report(const fs::path& dir) { return json::parse(slurp(dir / "report.json")); }

int count_lines(const fs::path& p) {
    std::ifstream in(p);
    int n = 0;
    std::string line;
    while (std::getline(in, line)) ++n;
    return n;
}

}  // namespace

TEST_CASE("solve writes the expected artifacts") {
    const fs::path dir = fresh_dir("solve");
    const int rc = run_cli({"solve", "--mu", "0.5", "--k", "5", "--l", "80", "--range", "0", "40",
                            "--iter-max", "4000", "--out", dir.string()});
    CHECK(rc == 0);
    // header + 16 interior points per interval + 81 breakpoints
    CHECK(count_lines(dir / "solution.csv") == 16 * 80 + 81 + 1);
    CHECK(count_lines(dir / "phase.csv") == 16 * 80 + 81 + 1);
    const json report = load_report(dir);
    CHECK(report["mu"] == 0.5);
    CHECK(report["k"] == 5);
    CHECK(report["l"] == 80);
    CHECK(report["method"] == "original");
    CHECK(report["converged"] == true);
    CHECK(report["N"].get<int>() >= 3);
}

TEST_CASE("usage errors name the offending field") {
    const fs::path dir = fresh_dir("usage");
    CHECK(run_cli({"solve", "--method", "segmented", "--w", "0", "--mu", "1", "--k", "5", "--l",
                   "10", "--range", "0", "5", "--out", dir.string()}) == 1);
    CHECK(run_cli({"solve", "--preset", "no-such-preset", "--out", dir.string()}) == 1);
    CHECK(run_cli({"solve", "--k", "2", "--l", "10", "--range", "0", "1", "--out",
                   dir.string()}) == 1);
}

TEST_CASE("non-convergence exits with code 2") {
    const fs::path dir = fresh_dir("nonconv");
    const int rc = run_cli({"solve", "--mu", "0.5", "--k", "5", "--l", "40", "--range", "0", "25",
                            "--iter-max", "1", "--out", dir.string()});
    CHECK(rc == 2);
    CHECK(load_report(dir)["converged"] == false);
}

TEST_CASE("identical configurations produce identical artifacts") {
    const fs::path d1 = fresh_dir("det1");
    const fs::path d2 = fresh_dir("det2");
    const std::vector<std::string> args{"solve", "--mu",   "0.25", "--k", "5", "--l", "40",
                                        "--range", "0",    "30",   "--iter-max", "500"};
    auto with_out = [&](const fs::path& d) {
        auto a = args;
        a.push_back("--out");
        a.push_back(d.string());
        return a;
    };
    REQUIRE(run_cli(with_out(d1)) == 0);
    REQUIRE(run_cli(with_out(d2)) == 0);
    CHECK(slurp(d1 / "solution.csv") == slurp(d2 / "solution.csv"));
    CHECK(slurp(d1 / "phase.csv") == slurp(d2 / "phase.csv"));
    json r1 = load_report(d1);
    json r2 = load_report(d2);
    r1.erase("wall_seconds");
    r2.erase("wall_seconds");
    r1.erase("newton_seconds");
    r2.erase("newton_seconds");
    CHECK(r1 == r2);
}

TEST_CASE("single-configuration sweep matches the solve report") {
    const fs::path sd = fresh_dir("sw_single");
    const fs::path rd = fresh_dir("sw_single_ref");
    REQUIRE(run_cli({"sweep", "--mu", "0.05", "--k", "5", "--l", "20", "--range", "0", "40",
                     "--out", sd.string()}) == 0);
    REQUIRE(run_cli({"solve", "--mu", "0.05", "--k", "5", "--l", "20", "--range", "0", "40",
                     "--out", rd.string()}) == 0);
    const json report = load_report(rd);

    std::ifstream csv(sd / "sweep.csv");
    std::string header, row;
    REQUIRE(std::getline(csv, header));
    REQUIRE(std::getline(csv, row));
    std::vector<std::string> cells;
    {
        std::stringstream ss(row);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
    }
    CHECK(cells.at(0) == "vdp");
    CHECK(std::stod(cells.at(1)) == 0.05);
    CHECK(std::stoi(cells.at(6)) == report["N"].get<int>());
    CHECK(cells.at(8) == "true");
    CHECK(std::stod(cells.at(13)) == report["err_inf"].get<double>());
}

TEST_CASE("sweep execution order shuffling keeps row order canonical") {
    const fs::path d1 = fresh_dir("shuffle1");
    const fs::path d2 = fresh_dir("shuffle2");
    const std::vector<std::string> base{"sweep",  "--mu", "0.01", "0.05", "--l", "20", "40",
                                        "--k",    "5",    "--range", "0", "40"};
    auto with_out = [&](const fs::path& d) {
        auto a = base;
        a.push_back("--out");
        a.push_back(d.string());
        return a;
    };
    setenv("COLLOX_SEED", "12345", 1);
    REQUIRE(run_cli(with_out(d1)) == 0);
    unsetenv("COLLOX_SEED");
    REQUIRE(run_cli(with_out(d2)) == 0);
    auto strip_walls = [](const std::string& text) {
        // wall columns differ run to run; compare the deterministic columns
        std::stringstream in(text);
        std::stringstream out;
        std::string line;
        while (std::getline(in, line)) {
            std::vector<std::string> cells;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) cells.push_back(cell);
            if (cells.size() > 11) {
                cells[9] = "-";
                cells[10] = "-";
            }
            for (std::size_t i = 0; i < cells.size(); ++i) {
                out << (i ? "," : "") << cells[i];
            }
            out << '\n';
        }
        return out.str();
    };
    CHECK(strip_walls(slurp(d1 / "sweep.csv")) == strip_walls(slurp(d2 / "sweep.csv")));
}

TEST_CASE("config file merging rejects unknown keys and obeys flag precedence") {
    const fs::path dir = fresh_dir("cfgfile");
    {
        std::ofstream cfg(dir / "run.json");
        cfg << R"({"mu": 0.05, "k": 5, "l": 40, "range": [0, 40], "iter_max": 600})";
    }
    REQUIRE(run_cli({"solve", "--config", (dir / "run.json").string(), "--l", "20", "--out",
                     dir.string()}) == 0);
    const json report = load_report(dir);
    CHECK(report["l"] == 20);     // flag wins
    CHECK(report["mu"] == 0.05);  // file value survives
    {
        std::ofstream cfg(dir / "bad.json");
        cfg << R"({"mu": 0.05, "meshes": 3})";
    }
    CHECK(run_cli({"solve", "--config", (dir / "bad.json").string(), "--out", dir.string()}) == 1);
}

TEST_CASE("analyze fits the three model kinds") {
    const fs::path dir = fresh_dir("analyze");
    const char* header =
        "problem,mu,k,l,w,method,N,iterations_per_segment,converged,wall_seconds,"
        "newton_seconds,flop_estimate,counted_flops,err_inf,range_a,range_b,tol\n";
    {
        std::ofstream csv(dir / "mu_cost.csv");
        csv << std::setprecision(17) << header;
        for (double mu : {2.0, 4.0, 8.0, 16.0}) {
            const double cost = 0.25 * std::pow(mu, 1.4);
            csv << "vdp," << mu << ",5,160,40,segmented,100,100,true," << cost << "," << cost
                << ",1,1,1,0,20,0.0001\n";
        }
    }
    REQUIRE(run_cli({"analyze", "--input", (dir / "mu_cost.csv").string(), "--kind", "mu-cost",
                     "--out", dir.string()}) == 0);
    {
        const json a = json::parse(slurp(dir / "analysis.json"));
        CHECK(std::abs(a["exponent"].get<double>() - 1.4) < 1e-10);
        CHECK(std::abs(a["prefactor"].get<double>() - 0.25) < 1e-10);
    }
    {
        std::ofstream csv(dir / "model.csv");
        csv << std::setprecision(17) << header;
        csv << "vdp,3,5,160,1,original,1000,1000,true,1,1,1,1,1,0,20,0.0001\n";
        // window counts dividing 1000 so the integral N column stays exact
        for (int w : {2, 4, 5, 8, 10, 20, 25, 40}) {
            const double n = 1000.0 / w + 3.0 * w;
            csv << "vdp,3,5,160," << w << ",segmented," << n << "," << n
                << ",true,1,1,1,1,1,0,20,0.0001\n";
        }
    }
    REQUIRE(run_cli({"analyze", "--input", (dir / "model.csv").string(), "--kind",
                     "iteration-model", "--out", dir.string()}) == 0);
    {
        const json a = json::parse(slurp(dir / "analysis.json"));
        CHECK(std::abs(a["lambda"].get<double>() - 1.0) < 1e-3);
        CHECK(std::abs(a["n_min"].get<double>() - 3.0) < 1e-3);
        CHECK(a["n_ori"] == 1000.0);
    }
    {
        std::ofstream csv(dir / "order.csv");
        csv << std::setprecision(17) << header;
        for (int l : {8, 16, 32}) {
            const double mesh = 1.0 / l;
            csv << "cos,1,5," << l << ",1,original,3,3,true,1,1,1,1," << std::pow(mesh, 3)
                << ",0,1,1e-10\n";
        }
    }
    REQUIRE(run_cli({"analyze", "--input", (dir / "order.csv").string(), "--kind", "order",
                     "--out", dir.string()}) == 0);
    {
        const json a = json::parse(slurp(dir / "analysis.json"));
        CHECK(std::abs(a["order"].get<double>() - 3.0) < 1e-10);
    }
    // Insufficient data exits 2.
    {
        std::ofstream csv(dir / "thin.csv");
        csv << header;
        csv << "vdp,3,5,160,1,original,100,100,true,1,1,1,1,1,0,20,0.0001\n";
        csv << "vdp,3,5,160,2,segmented,60,60,true,1,1,1,1,1,0,20,0.0001\n";
    }
    CHECK(run_cli({"analyze", "--input", (dir / "thin.csv").string(), "--kind", "iteration-model",
                   "--out", dir.string()}) == 2);
}

TEST_CASE("end-to-end: sweep then analyze recovers the iteration model") {
    const fs::path dir = fresh_dir("roundtrip");
    REQUIRE(run_cli({"sweep", "--mu", "5", "--k", "5", "--l", "96", "--range", "0", "12",
                     "--method", "original", "segmented", "--w", "1", "2", "4", "8", "16", "32",
                     "--iter-max", "8000", "--out", dir.string()}) == 0);
    const int rc = run_cli({"analyze", "--input", (dir / "sweep.csv").string(), "--kind",
                            "iteration-model", "--out", dir.string()});
    CHECK(rc == 0);
    const json a = json::parse(slurp(dir / "analysis.json"));
    CHECK(a["lambda"].get<double>() > 0.5);
    CHECK(a["n_min"].get<double>() > 2.0);
    CHECK(a["n_min"].get<double>() < 6.0);
}

TEST_CASE("window-sweep preset emits one row per window count") {
    const fs::path dir = fresh_dir("preset_w");
    REQUIRE(run_cli({"sweep", "--preset", "table5.2", "--out", dir.string()}) == 0);
    CHECK(count_lines(dir / "sweep.csv") == 9);  // header + 8 window counts
    // The residual maxima agree across the sweep.
    std::ifstream csv(dir / "sweep.csv");
    std::string line;
    std::getline(csv, line);
    double lo = 1e300, hi = 0.0;
    while (std::getline(csv, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.at(8) == "true");
        const double err = std::stod(cells.at(13));
        lo = std::min(lo, err);
        hi = std::max(hi, err);
    }
    CHECK(hi / lo <= 1.05);
}

TEST_CASE("cost-grid preset produces analyzable rows") {
    const fs::path dir = fresh_dir("preset_cost");
    REQUIRE(run_cli({"sweep", "--preset", "table3.1", "--out", dir.string()}) == 0);
    CHECK(count_lines(dir / "sweep.csv") == 4 * 4 * 2 + 1);
}

TEST_CASE("mesh-refinement rows recover the residual order") {
    const fs::path dir = fresh_dir("cos_order");
    REQUIRE(run_cli({"sweep", "--problem", "cos", "--k", "5", "--l", "8", "16", "32", "--range",
                     "0", "6.283185307179586", "--tol", "1e-10", "--iter-max", "10", "--out",
                     dir.string()}) == 0);
    REQUIRE(run_cli({"analyze", "--input", (dir / "sweep.csv").string(), "--kind", "order",
                     "--out", dir.string()}) == 0);
    const json a = json::parse(slurp(dir / "analysis.json"));
    CHECK(a["order"].get<double>() >= 3.0 - 0.5);  // k - 2 for k = 5
}
