#include "collox/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "collox/errors.hpp"

namespace collox {
namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double ssr = 0.0;  // sum of squared residuals
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("regression: degenerate abscissae");
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        fit.ssr += r * r;
    }
    return fit;
}

// Residual of the log-log regression for one N_min candidate; infinity when
// fewer than 3 points keep a positive log argument. `dropped` reports how
// many were lost.
double model_residual(std::span<const std::pair<double, double>> points, double n_min,
                      double* lambda_out, int* dropped) {
    std::vector<double> xs, ys;
    xs.reserve(points.size());
    ys.reserve(points.size());
    int lost = 0;
    for (const auto& [w, n_seg] : points) {
        const double arg = n_seg - w * n_min;
        if (arg > 0.0) {
            xs.push_back(std::log(w));
            ys.push_back(std::log(arg));
        } else {
            ++lost;
        }
    }
    if (dropped != nullptr) {
        *dropped = lost;
    }
    if (xs.size() < 3) {
        return std::numeric_limits<double>::infinity();
    }
    const LineFit fit = least_squares(xs, ys);
    if (lambda_out != nullptr) {
        *lambda_out = -fit.slope;
    }
    return fit.ssr;
}

}  // namespace

IterationModel fit_iteration_model(std::span<const std::pair<double, double>> points,
                                   double n_ori) {
    if (points.size() < 4) {
        throw InsufficientDataError("fit_iteration_model: need at least 4 (w, N) points");
    }
    double ub = std::numeric_limits<double>::infinity();
    for (const auto& [w, n_seg] : points) {
        if (!(w > 0.0) || !(n_seg > 0.0)) {
            throw std::invalid_argument("fit_iteration_model: w and N must be positive");
        }
        ub = std::min(ub, n_seg / w);
    }
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i].first == points[j].first) {
                throw std::invalid_argument("fit_iteration_model: duplicate w values");
            }
        }
    }

    // Global grid scan over N_min in (0, min N/w), then a local ternary
    // polish between the bracketing grid neighbours.
    constexpr int grid = 2000;
    double best_nmin = 0.0;
    double best_res = std::numeric_limits<double>::infinity();
    int best_idx = -1;
    for (int i = 1; i < grid; ++i) {
        const double cand = ub * i / grid;
        const double res = model_residual(points, cand, nullptr, nullptr);
        if (res < best_res) {
            best_res = res;
            best_nmin = cand;
            best_idx = i;
        }
    }
    if (!std::isfinite(best_res)) {
        throw InsufficientDataError(
            "fit_iteration_model: fewer than 3 usable points for every N_min candidate");
    }
    {
        double lo = ub * std::max(0, best_idx - 1) / grid;
        double hi = ub * std::min(grid, best_idx + 1) / grid;
        for (int it = 0; it < 200; ++it) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (model_residual(points, m1, nullptr, nullptr) <=
                model_residual(points, m2, nullptr, nullptr)) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        const double cand = 0.5 * (lo + hi);
        const double res = model_residual(points, cand, nullptr, nullptr);
        if (res < best_res) {
            best_res = res;
            best_nmin = cand;
        }
    }

    IterationModel model;
    model.n_ori = n_ori;
    model.n_min = best_nmin;
    model.fit_residual = model_residual(points, best_nmin, &model.lambda, &model.dropped_points);
    return model;
}

double optimal_w(double lambda, double n_ori, double n_min) {
    if (!(lambda > 0.0) || !(n_ori > 0.0) || !(n_min > 0.0)) {
        throw std::invalid_argument("optimal_w: all arguments must be positive");
    }
    return std::pow(lambda * n_ori / n_min, 1.0 / (1.0 + lambda));
}

PowerFit fit_mu_cost(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) {
        throw std::invalid_argument("fit_mu_cost: need at least 3 points");
    }
    std::vector<double> xs, ys;
    xs.reserve(points.size());
    ys.reserve(points.size());
    for (const auto& [mu, cost] : points) {
        if (!(mu > 0.0) || !(cost > 0.0)) {
            throw std::invalid_argument("fit_mu_cost: mu and cost must be positive");
        }
        xs.push_back(std::log(mu));
        ys.push_back(std::log(cost));
    }
    const LineFit fit = least_squares(xs, ys);
    PowerFit out;
    out.exponent = fit.slope;
    out.prefactor = std::exp(fit.intercept);
    out.fit_residual = fit.ssr;
    return out;
}

double convergence_order(std::span<const std::pair<double, double>> errors) {
    if (errors.size() < 2) {
        throw std::invalid_argument("convergence_order: need at least 2 points");
    }
    std::vector<double> xs, ys;
    xs.reserve(errors.size());
    ys.reserve(errors.size());
    for (const auto& [mesh, err] : errors) {
        if (!(mesh > 0.0) || !(err > 0.0)) {
            throw std::invalid_argument("convergence_order: meshes and errors must be positive");
        }
        xs.push_back(std::log(mesh));
        ys.push_back(std::log(err));
    }
    return least_squares(xs, ys).slope;
}

}  // namespace collox
