#include "collox/vdp.hpp"

#include <cmath>
#include <stdexcept>

namespace collox {

OdeProblem vdp_problem(const VdpParams& p) {
    if (!(p.mu > 0.0)) {
        throw std::invalid_argument("vdp_problem: mu must be positive");
    }
    const double mu = p.mu;
    OdeProblem problem;
    problem.f = [mu](double, double g, double dg) { return mu * (1.0 - g * g) * dg - g; };
    problem.df_dg = [mu](double, double g, double dg) { return -2.0 * mu * g * dg - 1.0; };
    problem.df_ddg = [mu](double, double g, double) { return mu * (1.0 - g * g); };
    problem.ic = {InitialCondition{1.0, 0.0, p.g0}, InitialCondition{0.0, 1.0, p.dg0}};
    return problem;
}

double residual(const PiecewiseSolution& s, const VdpParams& p, double x) {
    const Spline& piece = s.pieces[s.piece_index(x)].spline;
    thread_local LocalBasis lb;
    eval_basis_into(lb, piece.knots, x, 3);
    double f = 0.0, df = 0.0, d2f = 0.0;
    for (int i = 0; i < lb.order; ++i) {
        const double a = piece.coeffs[lb.first + i];
        f += a * lb.at(0, i);
        df += a * lb.at(1, i);
        d2f += a * lb.at(2, i);
    }
    return d2f + p.mu * (f * f - 1.0) * df + f;
}

double residual_bound(int k, double mesh, double mu, double c) {
    if (k < 4) {
        throw std::invalid_argument("residual_bound: requires k >= 4");
    }
    if (!(mesh > 0.0)) {
        throw std::invalid_argument("residual_bound: mesh must be positive");
    }
    const double hk = std::pow(mesh, k);
    return c * (std::pow(mesh, k - 2) + hk +
                mu * (3.0 * std::pow(mesh, k - 1) + 0.25 * std::pow(mesh, 3 * k - 1))) +
           4.0 * mu * mu * hk;
}

PhaseSamples phase_samples(const PiecewiseSolution& s, int samples_per_interval) {
    PhaseSamples out;
    for (std::size_t p = 0; p < s.pieces.size(); ++p) {
        const Spline& piece = s.pieces[p].spline;
        const BreakSequence& breaks = piece.knots.breaks;
        for (int i = 0; i < breaks.intervals(); ++i) {
            const double lo = breaks.points[i];
            const double hi = breaks.points[i + 1];
            const int first = (p == 0 && i == 0) ? 0 : 1;
            for (int j = first; j <= samples_per_interval + 1; ++j) {
                const double x = (j == samples_per_interval + 1)
                                     ? hi
                                     : lo + j * (hi - lo) / (samples_per_interval + 1);
                const double g = eval_spline(piece, x, 0);
                const double dg = eval_spline(piece, x, 1);
                out.points.emplace_back(g, dg);
                out.max_g_dg = std::max(out.max_g_dg, std::abs(g * dg));
            }
        }
    }
    return out;
}

std::vector<std::pair<double, double>> find_extrema(const PiecewiseSolution& s, double x_min,
                                                    int samples_per_interval) {
    std::vector<std::pair<double, double>> extrema;
    const double a = std::max(x_min, s.a());
    const double b = s.b();
    // Scan Df sign changes on a fine grid, then bisect Df to locate each
    // stationary point.
    std::size_t total = 0;
    for (const auto& piece : s.pieces) {
        total += piece.spline.knots.breaks.intervals();
    }
    const int steps = static_cast<int>(total) * samples_per_interval;
    double x_prev = a;
    double df_prev = s.eval(a, 1);
    for (int i = 1; i <= steps; ++i) {
        const double x = a + i * (b - a) / steps;
        const double df = s.eval(x, 1);
        if (df_prev != 0.0 && df != 0.0 && ((df_prev < 0.0) != (df < 0.0))) {
            double lo = x_prev, hi = x;
            double flo = df_prev;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = s.eval(mid, 1);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            const double root = 0.5 * (lo + hi);
            extrema.emplace_back(root, s.eval(root, 0));
        }
        x_prev = x;
        df_prev = df;
    }
    return extrema;
}

}  // namespace collox
