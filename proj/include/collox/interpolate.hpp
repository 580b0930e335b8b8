#pragma once

#include <span>
#include <vector>

#include "collox/spline.hpp"

namespace collox {

struct InterpolateOptions {
    /// Debug fallback: solve the collocation matrix densely instead of with
    /// the banded factorization. Results should agree to rounding.
    bool dense_solver = false;
};

/// Factored spline collocation matrix B(sites) for one knot vector: banded LU
/// with partial pivoting, reusable across right-hand sides. The constructor
/// enforces the Schoenberg-Whitney condition t_i < sites[i] < t_{i+k} (end
/// sites may sit on the end knots) and throws SingularSystemError naming the
/// offending index on violation or breakdown.
class BandedInterpolator {
public:
    BandedInterpolator(const KnotVector& kv, std::span<const double> sites);

    std::vector<double> solve(std::span<const double> values) const;
    Spline interpolate(std::span<const double> values) const;
    const KnotVector& knots() const noexcept { return knots_; }

private:
    double& at(int i, int j) { return ab_[static_cast<std::size_t>(i - j + ku_) * n_ + j]; }
    double get(int i, int j) const {
        return ab_[static_cast<std::size_t>(i - j + ku_) * n_ + j];
    }

    KnotVector knots_;
    int n_ = 0;
    int kl_ = 0;
    int ku_ = 0;  // includes the fill rows used by row interchanges
    std::vector<double> ab_;
    std::vector<int> pivots_;
};

/// Spline interpolation at `sites`: finds f with f(sites[j]) == values[j].
Spline interpolate(const KnotVector& kv, std::span<const double> sites,
                   std::span<const double> values, const InterpolateOptions& opts = {});

}  // namespace collox
