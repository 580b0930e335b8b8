// Benchmark comparing the serial reference kernels against the OpenMP paths,
// plus the whole-range and segmented drivers on a stiff case. The parallel
// kernels must produce bit-identical output; this harness checks that while
// it times them.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#include "collox/assemble.hpp"
#include "collox/drivers.hpp"
#include "collox/vdp.hpp"

using namespace collox;
using Clock = std::chrono::steady_clock;

namespace {

double time_best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        fn();
        const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
        if (dt < best) best = dt;
    }
    return best;
}

void bench_kernels(int l, int reps) {
    const int k = 5;
    const BreakSequence breaks = build_uniform_breaks(0.0, 40.0, l);
    const KnotVector kv = build_ode_knots(breaks, k);
    const DatasiteSet sites = build_datasites(breaks, legendre_pattern(k - 2));
    const OdeProblem problem = vdp_problem(VdpParams{3.0, 1.0, 0.0});

    std::mt19937 rng(1234);
    Spline iterate{kv, std::vector<double>(kv.dimension)};
    for (auto& c : iterate.coeffs) {
        c = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
    }

    BasisCache cache_s, cache_p;
    const double t_cache_s =
        time_best_of(reps, [&] { cache_s = build_basis_cache(kv, sites, Exec::Serial); });
    const double t_cache_p =
        time_best_of(reps, [&] { cache_p = build_basis_cache(kv, sites, Exec::Parallel); });
    bool cache_same = true;
    for (std::size_t i = 0; i < cache_s.at_sites.size(); ++i) {
        if (cache_s.at_sites[i].table != cache_p.at_sites[i].table) cache_same = false;
    }

    AbdMatrix a_s, a_p;
    RhsVector rhs_s, rhs_p;
    const double t_asm_s = time_best_of(
        reps, [&] { assemble_system(problem, kv, sites, iterate, cache_s, a_s, rhs_s, Exec::Serial); });
    const double t_asm_p = time_best_of(reps, [&] {
        assemble_system(problem, kv, sites, iterate, cache_p, a_p, rhs_p, Exec::Parallel);
    });
    const bool asm_same = a_s.data == a_p.data && rhs_s == rhs_p;

    PiecewiseSolution sol;
    sol.pieces.push_back(Piece{0.0, 40.0, iterate});
    std::vector<SamplePoint> smp_s, smp_p;
    const double t_smp_s =
        time_best_of(reps, [&] { smp_s = sample_solution(problem, sol, 16, Exec::Serial); });
    const double t_smp_p =
        time_best_of(reps, [&] { smp_p = sample_solution(problem, sol, 16, Exec::Parallel); });
    bool smp_same = smp_s.size() == smp_p.size();
    for (std::size_t i = 0; smp_same && i < smp_s.size(); ++i) {
        smp_same = std::memcmp(&smp_s[i], &smp_p[i], sizeof(SamplePoint)) == 0;
    }

    std::printf("l = %-6d basis cache  serial %8.3f ms  parallel %8.3f ms  speedup %.2fx  %s\n",
                l, t_cache_s * 1e3, t_cache_p * 1e3, t_cache_s / t_cache_p,
                cache_same ? "identical" : "MISMATCH");
    std::printf("           assembly     serial %8.3f ms  parallel %8.3f ms  speedup %.2fx  %s\n",
                t_asm_s * 1e3, t_asm_p * 1e3, t_asm_s / t_asm_p,
                asm_same ? "identical" : "MISMATCH");
    std::printf("           sampling     serial %8.3f ms  parallel %8.3f ms  speedup %.2fx  %s\n",
                t_smp_s * 1e3, t_smp_p * 1e3, t_smp_s / t_smp_p,
                smp_same ? "identical" : "MISMATCH");
}

void bench_methods() {
    std::printf("\nmu = 3, k = 5, l = 160 on [0..20]:\n");
    SolverConfig cfg;
    cfg.k = 5;
    cfg.l = 160;
    cfg.a = 0.0;
    cfg.b = 20.0;
    cfg.iter_max = 6000;
    const OdeProblem problem = vdp_problem(VdpParams{3.0, 1.0, 0.0});

    cfg.method = Method::Original;
    cfg.w = 1;
    SolveReport ori = solve(problem, cfg);
    for (int i = 0; i < 4; ++i) {
        const SolveReport again = solve(problem, cfg);
        if (again.wall_seconds < ori.wall_seconds) ori = again;
    }
    std::printf("  original              N = %4d  wall %8.3f ms  err_inf %.4g\n",
                ori.total_iterations(), ori.wall_seconds * 1e3, ori.err_inf);

    cfg.method = Method::Segmented;
    for (int w : {4, 16, 40, 160}) {
        cfg.w = w;
        cfg.iter_max = 2000;
        SolveReport seg = solve(problem, cfg);
        for (int i = 0; i < 4; ++i) {
            const SolveReport again = solve(problem, cfg);
            if (again.wall_seconds < seg.wall_seconds) seg = again;
        }
        std::printf("  segmented w = %-4d    N = %4d  wall %8.3f ms  err_inf %.4g  (%.1fx)\n", w,
                    seg.total_iterations(), seg.wall_seconds * 1e3, seg.err_inf,
                    ori.wall_seconds / seg.wall_seconds);
    }
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
    std::printf("kernel comparison (serial reference vs OpenMP):\n");
    for (int l : quick ? std::vector<int>{2000} : std::vector<int>{2000, 8000, 32000}) {
        bench_kernels(l, quick ? 3 : 7);
    }
    bench_methods();
    return 0;
}
