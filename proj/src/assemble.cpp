#include "collox/assemble.hpp"

#include <stdexcept>
#include <string>

namespace collox {
namespace {

void check_ode_knots(const KnotVector& kv) {
    if (kv.order < 3 || kv.order > 20) {
        throw std::invalid_argument("assemble: require 3 <= k <= 20, got k = " +
                                    std::to_string(kv.order));
    }
    for (int nu : kv.continuity) {
        if (nu != 2) {
            throw std::invalid_argument("assemble: knots must carry two continuity conditions "
                                        "at every interior break");
        }
    }
}

}  // namespace

BasisCache build_basis_cache(const KnotVector& kv, const DatasiteSet& sites, Exec exec) {
    check_ode_knots(kv);
    if (sites.per_interval != kv.order - 2 || sites.intervals() != kv.breaks.intervals()) {
        throw std::invalid_argument("build_basis_cache: datasites do not match the knot vector");
    }
    BasisCache cache;
    cache.at_start = eval_basis(kv, kv.a(), 2);
    const std::size_t count = sites.tau.size();
    cache.at_sites.resize(count);
    // Site j sits strictly inside break interval b = j / (k-2); each interior
    // break carries k-2 knots, so that is knot interval (k-1) + (k-2) b.
    const auto eval_site = [&](std::size_t j) {
        const int b = static_cast<int>(j) / (kv.order - 2);
        const int interval = kv.order - 1 + (kv.order - 2) * b;
        eval_local_basis_into(cache.at_sites[j], kv.knots, kv.order, interval, sites.tau[j], 3);
    };
    if (detail::use_parallel(exec, count * detail::kCostBasisEval)) {
#pragma omp parallel for schedule(static)
        for (std::size_t j = 0; j < count; ++j) {
            eval_site(j);
        }
    } else {
        for (std::size_t j = 0; j < count; ++j) {
            eval_site(j);
        }
    }
    return cache;
}

void assemble_system(const OdeProblem& problem, const KnotVector& kv, const DatasiteSet& sites,
                     const Spline& iterate, const BasisCache& cache, AbdMatrix& a_out,
                     RhsVector& rhs_out, Exec exec, FlopCount* flops) {
    check_ode_knots(kv);
    const int k = kv.order;
    const int l = kv.breaks.intervals();
    const int n = kv.dimension;
    if (iterate.knots.order != k || iterate.knots.knots != kv.knots) {
        throw std::invalid_argument("assemble_system: iterate lives on different knots");
    }
    if (static_cast<int>(cache.at_sites.size()) != (k - 2) * l) {
        throw std::invalid_argument("assemble_system: basis cache does not match the knot vector");
    }
    if (a_out.order != k || a_out.blocks != l) {
        a_out = AbdMatrix::zero(k, l);
    }
    rhs_out.assign(n, 0.0);

    // IC rows: beta_g B_i(a) + beta_dg DB_i(a). Only the first two are
    // nonzero (endpoint support), but all k supported entries are stored.
    for (int r = 0; r < 2; ++r) {
        const auto& c = problem.ic[r];
        for (int i = 0; i < k; ++i) {
            a_out.ic_at(r, i) = c.beta_g * cache.at_start.at(0, i) +
                                c.beta_dg * cache.at_start.at(1, i);
        }
        rhs_out[r] = c.value;
    }

    const int rows = (k - 2) * l;
    const auto fill_row = [&](int j) -> std::uint64_t {
        const LocalBasis& lb = cache.at_sites[j];
        const int block = j / (k - 2);
        const int row_in_block = j % (k - 2);
        const double x = sites.tau[j];

        double g = 0.0, dg = 0.0;
        for (int i = 0; i < k; ++i) {
            const double a = iterate.coeffs[lb.first + i];
            g += a * lb.at(0, i);
            dg += a * lb.at(1, i);
        }
        // Linearization about the iterate: D^2 f + p Df + q f = s.
        const double p = -problem.df_ddg(x, g, dg);
        const double q = -problem.df_dg(x, g, dg);
        const double s = problem.f(x, g, dg) + p * dg + q * g;

        for (int i = 0; i < k; ++i) {
            a_out.block_at(block, row_in_block, i) =
                lb.at(2, i) + p * lb.at(1, i) + q * lb.at(0, i);
        }
        rhs_out[2 + j] = s;
        return static_cast<std::uint64_t>(8) * k + 6;
    };

    std::uint64_t ops = 0;
    if (detail::use_parallel(exec, static_cast<std::size_t>(rows) * detail::kCostAssemblyRow)) {
        std::uint64_t total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
        for (int j = 0; j < rows; ++j) {
            total += fill_row(j);
        }
        ops = total;
    } else {
        for (int j = 0; j < rows; ++j) {
            ops += fill_row(j);
        }
    }
    if (flops != nullptr) {
        flops->add(ops + 2 * static_cast<std::uint64_t>(k) * 2);
    }
}

}  // namespace collox
