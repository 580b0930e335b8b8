#pragma once

#include <vector>

#include "collox/knots.hpp"

namespace collox {

/// Linear combination of the B-splines generated by a knot vector.
struct Spline {
    KnotVector knots;
    std::vector<double> coeffs;  // length knots.dimension

    double a() const noexcept { return knots.a(); }
    double b() const noexcept { return knots.b(); }
};

/// Sum of coeffs[i] * D^deriv B_i(x) over the locally supported basis.
/// Requires 0 <= deriv < order and x in the basic interval.
double eval_spline(const Spline& s, double x, int deriv = 0);

}  // namespace collox
