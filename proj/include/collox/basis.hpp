#pragma once

#include <span>
#include <vector>

#include "collox/knots.hpp"

namespace collox {

/// Values (and derivatives) of the `order` B-splines supported on one knot
/// interval. Row d holds the d-th derivative of B_{first}, ..., B_{first+order-1};
/// every other basis function vanishes on this interval.
struct LocalBasis {
    int interval = 0;  // knot interval index, t_interval <= x < t_{interval+1}
    int first = 0;     // global index of the first supported B-spline
    int order = 0;
    int nderiv = 0;  // rows stored: derivative orders 0 .. nderiv-1
    std::vector<double> table;  // nderiv x order, row-major

    double at(int deriv, int local) const noexcept { return table[deriv * order + local]; }
    double& at(int deriv, int local) noexcept { return table[deriv * order + local]; }
};

/// Core evaluation on a raw knot sequence: Cox-de Boor triangle for the
/// values, repeated application of the derivative relation for higher rows.
/// `interval` must satisfy t_interval <= x (< t_{interval+1} except at the
/// right end) with t_interval < t_{interval+1}. Zero-length knot spans are
/// skipped by branch, never divided by.
LocalBasis eval_local_basis(std::span<const double> knots, int order, int interval, double x,
                            int nderiv);

/// Same, writing into an existing LocalBasis so hot loops can reuse the
/// table storage.
void eval_local_basis_into(LocalBasis& out, std::span<const double> knots, int order,
                           int interval, double x, int nderiv);

/// Values of the locally supported B-splines of `kv` at x with derivatives up
/// to order nderiv-1 (1 <= nderiv <= k). Throws std::out_of_range for x
/// outside the basic interval.
LocalBasis eval_basis(const KnotVector& kv, double x, int nderiv);

void eval_basis_into(LocalBasis& out, const KnotVector& kv, double x, int nderiv);

}  // namespace collox
