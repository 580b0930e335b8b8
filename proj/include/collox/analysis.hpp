#pragma once

#include <span>
#include <utility>

namespace collox {

/// Fitted iteration-count model N_seg(w) = N_ori / w^lambda + N_min * w.
struct IterationModel {
    double n_ori = 0.0;
    double n_min = 0.0;
    double lambda = 0.0;
    double fit_residual = 0.0;  // sum of squared log-regression residuals
    int dropped_points = 0;     // points whose log argument was non-positive
};

/// Fits (lambda, N_min) to measured (w, N_seg) pairs: N_min is searched on a
/// grid over (0, min N_seg/w) and polished locally, minimizing the residual
/// of the regression log(N_seg - w N_min) ~ -lambda log(w) + const; lambda is
/// the negated slope. n_ori is carried into the result for later use.
/// Throws InsufficientDataError when fewer than 3 usable points remain.
IterationModel fit_iteration_model(std::span<const std::pair<double, double>> points,
                                   double n_ori);

/// Window count minimizing the model: (lambda N_ori / N_min)^(1/(1+lambda)).
double optimal_w(double lambda, double n_ori, double n_min);

struct PowerFit {
    double exponent = 0.0;   // m in cost = A mu^m
    double prefactor = 0.0;  // A
    double fit_residual = 0.0;
};

/// Least squares of log(cost) against log(mu). All inputs must be positive
/// and at least two distinct mu values are required.
PowerFit fit_mu_cost(std::span<const std::pair<double, double>> points);

/// Slope of log(err) against log(mesh); meshes must be distinct and errors
/// positive.
double convergence_order(std::span<const std::pair<double, double>> errors);

}  // namespace collox
