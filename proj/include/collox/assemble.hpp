#pragma once

#include <vector>

#include "collox/abd.hpp"
#include "collox/basis.hpp"
#include "collox/datasites.hpp"
#include "collox/exec.hpp"
#include "collox/problem.hpp"
#include "collox/spline.hpp"

namespace collox {

/// B-spline values and derivatives at every point the collocation system
/// needs, computed once per knot vector and reused across Newton iterations:
/// value + first derivative at the left end (IC rows), value + first + second
/// derivative at each datasite.
struct BasisCache {
    LocalBasis at_start;
    std::vector<LocalBasis> at_sites;
};

BasisCache build_basis_cache(const KnotVector& kv, const DatasiteSet& sites,
                             Exec exec = Exec::Auto);

/// Fills the collocation system for one Newton step: the two IC rows from the
/// endpoint basis values, then one row per datasite encoding
/// D^2 f + p Df + q f = s with p = -dF/d(Dg), q = -dF/dg and
/// s = F - dF/d(Dg) Dg_r - dF/dg g_r, all evaluated on the current iterate.
/// Rows touch only the k basis functions supported on their interval.
void assemble_system(const OdeProblem& problem, const KnotVector& kv, const DatasiteSet& sites,
                     const Spline& iterate, const BasisCache& cache, AbdMatrix& a_out,
                     RhsVector& rhs_out, Exec exec = Exec::Auto, FlopCount* flops = nullptr);

}  // namespace collox
