#include "collox/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace collox {

void validate(const OdeProblem& problem) {
    if (!problem.f || !problem.df_dg || !problem.df_ddg) {
        throw std::invalid_argument("OdeProblem: F and both partials must be set");
    }
    const double det = problem.ic[0].beta_g * problem.ic[1].beta_dg -
                       problem.ic[0].beta_dg * problem.ic[1].beta_g;
    if (det == 0.0 || !std::isfinite(det)) {
        throw std::invalid_argument("OdeProblem: initial conditions are linearly dependent");
    }
}

std::array<double, 2> ic_values(const OdeProblem& problem) {
    validate(problem);
    const auto& c0 = problem.ic[0];
    const auto& c1 = problem.ic[1];
    const double det = c0.beta_g * c1.beta_dg - c0.beta_dg * c1.beta_g;
    const double g = (c0.value * c1.beta_dg - c0.beta_dg * c1.value) / det;
    const double dg = (c0.beta_g * c1.value - c0.value * c1.beta_g) / det;
    return {g, dg};
}

}  // namespace collox
