#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "collox/abd.hpp"
#include "collox/knots.hpp"

namespace collox::testing {

inline BreakSequence random_breaks(std::mt19937& rng, int l, double a = 0.0, double span = 5.0) {
    std::uniform_real_distribution<double> gap(0.05, 1.0);
    BreakSequence breaks;
    breaks.points.push_back(a);
    for (int i = 0; i < l; ++i) {
        breaks.points.push_back(breaks.points.back() + gap(rng) * span / l);
    }
    return breaks;
}

inline KnotVector random_knots(std::mt19937& rng, int k_min = 2, int k_max = 8) {
    std::uniform_int_distribution<int> pick_k(k_min, k_max);
    std::uniform_int_distribution<int> pick_l(1, 6);
    const int k = pick_k(rng);
    const int l = pick_l(rng);
    std::vector<int> nu(l - 1);
    for (auto& v : nu) {
        v = std::uniform_int_distribution<int>(1, k - 1)(rng);
    }
    return build_knots(random_breaks(rng, l), k, nu);
}

/// Greville abscissae: knot averages, always Schoenberg-Whitney admissible.
inline std::vector<double> greville_sites(const KnotVector& kv) {
    std::vector<double> sites(kv.dimension);
    for (int i = 0; i < kv.dimension; ++i) {
        double sum = 0.0;
        for (int j = 1; j < kv.order; ++j) {
            sum += kv.knots[i + j];
        }
        sites[i] = sum / (kv.order - 1);
    }
    // The end averages are over identical knots; pin them so rounding cannot
    // push a site past the basic interval.
    sites.front() = kv.knots.front();
    sites.back() = kv.knots.back();
    return sites;
}

/// Plain dense Gaussian elimination with partial pivoting; the independent
/// oracle the structured solver is checked against.
inline std::vector<double> dense_gauss_solve(std::vector<double> a, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int j = 0; j < n; ++j) {
        int p = j;
        for (int i = j + 1; i < n; ++i) {
            if (std::abs(a[i * n + j]) > std::abs(a[p * n + j])) p = i;
        }
        for (int c = 0; c < n; ++c) std::swap(a[j * n + c], a[p * n + c]);
        std::swap(b[j], b[p]);
        for (int i = j + 1; i < n; ++i) {
            const double m = a[i * n + j] / a[j * n + j];
            for (int c = j; c < n; ++c) a[i * n + c] -= m * a[j * n + c];
            b[i] -= m * b[j];
        }
    }
    for (int j = n - 1; j >= 0; --j) {
        double sum = b[j];
        for (int c = j + 1; c < n; ++c) sum -= a[j * n + c] * b[c];
        b[j] = sum / a[j * n + j];
    }
    return b;
}

/// Random ABD system with IC rows confined to the leading 2x2 corner and a
/// dominant local diagonal so the forward march stays well conditioned.
inline AbdMatrix random_abd(std::mt19937& rng, int k, int l) {
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    AbdMatrix a = AbdMatrix::zero(k, l);
    a.ic_at(0, 0) = 3.0 + entry(rng);
    a.ic_at(0, 1) = entry(rng);
    a.ic_at(1, 0) = entry(rng);
    a.ic_at(1, 1) = 3.0 + entry(rng);
    for (int b = 0; b < l; ++b) {
        for (int r = 0; r < k - 2; ++r) {
            for (int c = 0; c < k; ++c) {
                a.block_at(b, r, c) = entry(rng);
            }
            a.block_at(b, r, r + 2) += 3.0;
        }
    }
    return a;
}

inline std::vector<double> abd_multiply(const AbdMatrix& a, const std::vector<double>& x) {
    std::vector<double> y(a.dim, 0.0);
    for (int c = 0; c < a.order; ++c) {
        y[0] += a.ic_at(0, c) * x[c];
        y[1] += a.ic_at(1, c) * x[c];
    }
    for (int b = 0; b < a.blocks; ++b) {
        for (int r = 0; r < a.block_rows(); ++r) {
            double sum = 0.0;
            for (int c = 0; c < a.order; ++c) {
                sum += a.block_at(b, r, c) * x[a.block_col(b) + c];
            }
            y[a.block_row(b) + r] = sum;
        }
    }
    return y;
}

}  // namespace collox::testing
