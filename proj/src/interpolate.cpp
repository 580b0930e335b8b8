#include "collox/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "collox/basis.hpp"
#include "collox/errors.hpp"

namespace collox {
namespace {

std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int j = 0; j < n; ++j) {
        int p = j;
        for (int i = j + 1; i < n; ++i) {
            if (std::abs(a[i * n + j]) > std::abs(a[p * n + j])) p = i;
        }
        if (a[p * n + j] == 0.0) {
            throw SingularSystemError("interpolate: dense fallback hit a zero pivot at row " +
                                          std::to_string(j),
                                      j);
        }
        if (p != j) {
            for (int c = 0; c < n; ++c) std::swap(a[j * n + c], a[p * n + c]);
            std::swap(b[j], b[p]);
        }
        for (int i = j + 1; i < n; ++i) {
            const double m = a[i * n + j] / a[j * n + j];
            if (m != 0.0) {
                for (int c = j; c < n; ++c) a[i * n + c] -= m * a[j * n + c];
                b[i] -= m * b[j];
            }
        }
    }
    for (int j = n - 1; j >= 0; --j) {
        double sum = b[j];
        for (int c = j + 1; c < n; ++c) sum -= a[j * n + c] * b[c];
        b[j] = sum / a[j * n + j];
    }
    return b;
}

void check_schoenberg_whitney(const KnotVector& kv, std::span<const double> sites) {
    const int n = kv.dimension;
    const int k = kv.order;
    if (static_cast<int>(sites.size()) != n) {
        throw std::invalid_argument("interpolate: need exactly dimension = " + std::to_string(n) +
                                    " sites and values");
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (!(sites[i] < sites[i + 1])) {
            throw std::invalid_argument("interpolate: sites must be strictly increasing (index " +
                                        std::to_string(i) + ")");
        }
    }
    // Schoenberg-Whitney: B_i(tau_i) != 0, i.e. t_i < tau_i < t_{i+k}; the end
    // sites may sit on the end knots.
    for (int i = 0; i < n; ++i) {
        const bool left_ok = sites[i] > kv.knots[i] || (i == 0 && sites[i] == kv.knots[i]);
        const bool right_ok =
            sites[i] < kv.knots[i + k] || (i == n - 1 && sites[i] == kv.knots[i + k]);
        if (!left_ok || !right_ok) {
            throw SingularSystemError(
                "interpolate: Schoenberg-Whitney condition violated at site " + std::to_string(i),
                i);
        }
    }
}

}  // namespace

BandedInterpolator::BandedInterpolator(const KnotVector& kv, std::span<const double> sites)
    : knots_(kv), n_(kv.dimension), kl_(kv.order - 1), ku_(2 * (kv.order - 1)) {
    check_schoenberg_whitney(kv, sites);
    const int k = kv.order;
    ab_.assign(static_cast<std::size_t>(kl_ + ku_ + 1) * n_, 0.0);
    pivots_.resize(n_);

    double scale = 0.0;
    LocalBasis lb;
    for (int j = 0; j < n_; ++j) {
        eval_basis_into(lb, kv, sites[j], 1);
        for (int c = 0; c < k; ++c) {
            at(j, lb.first + c) = lb.at(0, c);
            scale = std::max(scale, std::abs(lb.at(0, c)));
        }
    }

    // Banded LU with partial pivoting; the upper band already includes the
    // kl rows of fill the row swaps can introduce.
    for (int j = 0; j < n_; ++j) {
        const int last_row = std::min(j + kl_, n_ - 1);
        int p = j;
        for (int i = j + 1; i <= last_row; ++i) {
            if (std::abs(at(i, j)) > std::abs(at(p, j))) p = i;
        }
        pivots_[j] = p;
        if (std::abs(at(p, j)) <= 1e-14 * scale) {
            throw SingularSystemError(
                "interpolate: collocation matrix singular at row " + std::to_string(j), j);
        }
        const int last_col = std::min(j + ku_, n_ - 1);
        if (p != j) {
            for (int c = j; c <= last_col; ++c) std::swap(at(j, c), at(p, c));
        }
        const double pivot = at(j, j);
        for (int i = j + 1; i <= last_row; ++i) {
            const double m = at(i, j) / pivot;
            at(i, j) = m;
            if (m != 0.0) {
                for (int c = j + 1; c <= last_col; ++c) at(i, c) -= m * at(j, c);
            }
        }
    }
}

std::vector<double> BandedInterpolator::solve(std::span<const double> values) const {
    if (static_cast<int>(values.size()) != n_) {
        throw std::invalid_argument("BandedInterpolator: expected " + std::to_string(n_) +
                                    " values");
    }
    std::vector<double> b(values.begin(), values.end());
    for (int j = 0; j < n_; ++j) {
        if (pivots_[j] != j) {
            std::swap(b[j], b[pivots_[j]]);
        }
        const int last_row = std::min(j + kl_, n_ - 1);
        for (int i = j + 1; i <= last_row; ++i) {
            const double m = get(i, j);
            if (m != 0.0) {
                b[i] -= m * b[j];
            }
        }
    }
    for (int j = n_ - 1; j >= 0; --j) {
        double sum = b[j];
        const int last_col = std::min(j + ku_, n_ - 1);
        for (int c = j + 1; c <= last_col; ++c) sum -= get(j, c) * b[c];
        b[j] = sum / get(j, j);
    }
    return b;
}

Spline BandedInterpolator::interpolate(std::span<const double> values) const {
    return Spline{knots_, solve(values)};
}

Spline interpolate(const KnotVector& kv, std::span<const double> sites,
                   std::span<const double> values, const InterpolateOptions& opts) {
    if (opts.dense_solver) {
        check_schoenberg_whitney(kv, sites);
        const int n = kv.dimension;
        const int k = kv.order;
        std::vector<double> dense(static_cast<std::size_t>(n) * n, 0.0);
        LocalBasis lb;
        for (int j = 0; j < n; ++j) {
            eval_basis_into(lb, kv, sites[j], 1);
            for (int c = 0; c < k; ++c) {
                dense[static_cast<std::size_t>(j) * n + lb.first + c] = lb.at(0, c);
            }
        }
        return Spline{kv,
                      dense_solve(std::move(dense), std::vector<double>(values.begin(), values.end()))};
    }
    return BandedInterpolator(kv, sites).interpolate(values);
}

}  // namespace collox
