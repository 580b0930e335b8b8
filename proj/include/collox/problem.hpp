#pragma once

#include <array>
#include <functional>

namespace collox {

/// Linear initial condition beta_g * g(a) + beta_dg * Dg(a) = value.
struct InitialCondition {
    double beta_g = 0.0;
    double beta_dg = 0.0;
    double value = 0.0;
};

/// Second-order initial value problem D^2 g = F(x, g, Dg) with two linear
/// initial conditions and the two partial derivatives of F needed by the
/// Newton linearization.
struct OdeProblem {
    using Field = std::function<double(double x, double g, double dg)>;

    Field f;        // F(x, g, Dg)
    Field df_dg;    // dF/dg
    Field df_ddg;   // dF/d(Dg)
    std::array<InitialCondition, 2> ic;
};

/// Throws std::invalid_argument unless the two IC coefficient pairs are
/// linearly independent.
void validate(const OdeProblem& problem);

/// (g(a), Dg(a)) implied by the initial conditions.
std::array<double, 2> ic_values(const OdeProblem& problem);

}  // namespace collox
