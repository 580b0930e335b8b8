#include "collox/abd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "collox/errors.hpp"

namespace collox {

AbdMatrix AbdMatrix::zero(int order, int blocks) {
    if (order < 3 || blocks < 1) {
        throw std::invalid_argument("AbdMatrix: require order >= 3 and blocks >= 1");
    }
    AbdMatrix a;
    a.order = order;
    a.blocks = blocks;
    a.dim = (order - 2) * blocks + 2;
    a.ic.assign(2 * static_cast<std::size_t>(order), 0.0);
    a.data.assign(static_cast<std::size_t>(blocks) * (order - 2) * order, 0.0);
    return a;
}

std::vector<double> AbdMatrix::to_dense() const {
    std::vector<double> dense(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < order; ++c) {
            dense[static_cast<std::size_t>(r) * dim + c] = ic_at(r, c);
        }
    }
    for (int b = 0; b < blocks; ++b) {
        for (int r = 0; r < block_rows(); ++r) {
            for (int c = 0; c < order; ++c) {
                dense[static_cast<std::size_t>(block_row(b) + r) * dim + block_col(b) + c] =
                    block_at(b, r, c);
            }
        }
    }
    return dense;
}

namespace {

void check_structure(const AbdMatrix& a, const RhsVector& rhs) {
    if (a.dim != (a.order - 2) * a.blocks + 2) {
        throw std::invalid_argument("solve_abd: inconsistent dimensions");
    }
    if (static_cast<int>(rhs.size()) != a.dim) {
        throw std::invalid_argument("solve_abd: rhs length " + std::to_string(rhs.size()) +
                                    " != dimension " + std::to_string(a.dim));
    }
    // The left-to-right elimination relies on the IC rows coupling only the
    // first two coefficients; assembly produces exact zeros beyond them.
    for (int r = 0; r < 2; ++r) {
        for (int c = 2; c < a.order; ++c) {
            if (a.ic_at(r, c) != 0.0) {
                throw std::invalid_argument(
                    "solve_abd: IC row " + std::to_string(r) +
                    " has a nonzero entry beyond the two leading columns");
            }
        }
    }
}

}  // namespace

std::vector<double> solve_abd(const AbdMatrix& a, const RhsVector& rhs, FlopCount* flops) {
    std::vector<double> alpha;
    AbdWorkspace work;
    solve_abd_into(a, rhs, alpha, work, flops);
    return alpha;
}

void solve_abd_into(const AbdMatrix& a, const RhsVector& rhs, std::vector<double>& alpha,
                    AbdWorkspace& work, FlopCount* flops) {
    check_structure(a, rhs);
    const int k = a.order;
    const int m = k - 2;  // unknowns determined per block
    alpha.assign(a.dim, 0.0);
    std::uint64_t ops = 0;

    // 2x2 initial-condition corner. No row swap unless the natural pivot is
    // degenerate: for identity-form ICs this keeps alpha_0 == rhs_0 exactly,
    // which the segmented driver relies on for bit-exact value continuity.
    {
        double a00 = a.ic_at(0, 0), a01 = a.ic_at(0, 1), r0 = rhs[0];
        double a10 = a.ic_at(1, 0), a11 = a.ic_at(1, 1), r1 = rhs[1];
        double scale = std::max({std::abs(a00), std::abs(a01), std::abs(a10), std::abs(a11)});
        if (scale == 0.0) {
            throw SingularSystemError("solve_abd: zero initial-condition rows", -1);
        }
        if (!std::isfinite(scale)) {
            scale = 0.0;
        }
        if (std::abs(a00) <= 1e-14 * scale) {
            std::swap(a00, a10);
            std::swap(a01, a11);
            std::swap(r0, r1);
        }
        if (std::abs(a00) <= 1e-14 * scale) {
            throw SingularSystemError("solve_abd: singular initial-condition rows", -1);
        }
        const double mult = a10 / a00;
        const double u11 = a11 - mult * a01;
        if (std::abs(u11) <= 1e-14 * scale) {
            throw SingularSystemError("solve_abd: singular initial-condition rows", -1);
        }
        alpha[1] = (r1 - mult * r0) / u11;
        alpha[0] = (r0 - a01 * alpha[1]) / a00;
        ops += 9;
    }

    // March the blocks left to right: the two leading columns of each block
    // are already solved, so each block reduces to a dense (k-2)^2 system.
    std::vector<double>& local = work.local;
    std::vector<double>& local_rhs = work.local_rhs;
    local.resize(static_cast<std::size_t>(m) * m);
    local_rhs.resize(m);
    std::vector<double>& row_norm = work.row_norm;
    row_norm.resize(m);
    for (int b = 0; b < a.blocks; ++b) {
        const int col0 = a.block_col(b);
        for (int r = 0; r < m; ++r) {
            local_rhs[r] = rhs[a.block_row(b) + r] - a.block_at(b, r, 0) * alpha[col0] -
                           a.block_at(b, r, 1) * alpha[col0 + 1];
            double norm = 0.0;
            for (int c = 0; c < k; ++c) {
                norm = std::max(norm, std::abs(a.block_at(b, r, c)));
            }
            // Rows of one block may legitimately differ in magnitude by many
            // orders during stiff transients, so singularity is judged per
            // row, not against the block's largest entry. Non-finite rows
            // pass through and surface as NaN coefficients.
            row_norm[r] = std::isfinite(norm) ? norm : 0.0;
            for (int c = 0; c < m; ++c) {
                local[r * m + c] = a.block_at(b, r, c + 2);
            }
        }
        ops += static_cast<std::uint64_t>(4) * m;

        // In-place LU with partial pivoting over the block's rows.
        for (int j = 0; j < m; ++j) {
            int p = j;
            for (int i = j + 1; i < m; ++i) {
                if (std::abs(local[i * m + j]) > std::abs(local[p * m + j])) p = i;
            }
            if (std::abs(local[p * m + j]) <= 1e-14 * row_norm[p]) {
                throw SingularSystemError("solve_abd: singular block " + std::to_string(b), b);
            }
            if (p != j) {
                for (int c = j; c < m; ++c) std::swap(local[j * m + c], local[p * m + c]);
                std::swap(local_rhs[j], local_rhs[p]);
                std::swap(row_norm[j], row_norm[p]);
            }
            const double pivot = local[j * m + j];
            for (int i = j + 1; i < m; ++i) {
                const double mult = local[i * m + j] / pivot;
                if (mult != 0.0) {
                    for (int c = j + 1; c < m; ++c) local[i * m + c] -= mult * local[j * m + c];
                    local_rhs[i] -= mult * local_rhs[j];
                }
                ops += 1 + 2 * static_cast<std::uint64_t>(m - j);
            }
        }
        for (int j = m - 1; j >= 0; --j) {
            double sum = local_rhs[j];
            for (int c = j + 1; c < m; ++c) sum -= local[j * m + c] * alpha[col0 + 2 + c];
            alpha[col0 + 2 + j] = sum / local[j * m + j];
            ops += 1 + 2 * static_cast<std::uint64_t>(m - 1 - j);
        }
    }

    if (flops != nullptr) {
        flops->add(ops);
    }
}

std::vector<int> dependence_profile(const AbdMatrix& a) {
    const int m = a.order - 2;
    std::vector<int> highest(a.dim);
    highest[0] = 1;
    highest[1] = 1;
    for (int i = 2; i < a.dim; ++i) {
        // Coefficient i is determined together with the rest of its block,
        // whose last row is block_row + m - 1.
        const int block = (i - 2) / m;
        highest[i] = a.block_row(block) + m - 1;
    }
    return highest;
}

}  // namespace collox
