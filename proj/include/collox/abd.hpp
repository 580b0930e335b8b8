#pragma once

#include <cstdint>
#include <vector>

namespace collox {

/// Tally of floating-point operations performed by the instrumented kernels.
struct FlopCount {
    std::uint64_t value = 0;
    void add(std::uint64_t n) noexcept { value += n; }
};

/// Almost-block-diagonal collocation matrix: two initial-condition rows over
/// the first columns, then one dense (k-2) x k block per interval, each block
/// shifted k-2 columns right of its predecessor (so consecutive blocks share
/// exactly two columns).
struct AbdMatrix {
    int order = 0;   // k
    int blocks = 0;  // l
    int dim = 0;     // n = (k-2) l + 2

    std::vector<double> ic;    // 2 x k, row-major; columns 0..k-1 of the matrix
    std::vector<double> data;  // blocks x (k-2) x k, row-major per block

    static AbdMatrix zero(int order, int blocks);

    int block_rows() const noexcept { return order - 2; }
    /// First matrix column touched by block b.
    int block_col(int b) const noexcept { return (order - 2) * b; }
    /// First matrix row of block b (rows 0 and 1 are the IC rows).
    int block_row(int b) const noexcept { return 2 + (order - 2) * b; }

    double ic_at(int r, int c) const noexcept { return ic[r * order + c]; }
    double& ic_at(int r, int c) noexcept { return ic[r * order + c]; }
    double block_at(int b, int r, int c) const noexcept {
        return data[(static_cast<std::size_t>(b) * block_rows() + r) * order + c];
    }
    double& block_at(int b, int r, int c) noexcept {
        return data[(static_cast<std::size_t>(b) * block_rows() + r) * order + c];
    }

    /// Dense n x n copy (test/debug use).
    std::vector<double> to_dense() const;
};

using RhsVector = std::vector<double>;

/// Scratch buffers reused across repeated solves (one Newton iteration each).
struct AbdWorkspace {
    std::vector<double> local;
    std::vector<double> local_rhs;
    std::vector<double> row_norm;
};

/// Solves A alpha = rhs by the structured left-to-right elimination: the 2x2
/// initial-condition corner first, then one (k-2)x(k-2) solve per block with
/// partial pivoting confined to the block's rows. Cost is O(k^3 l). Requires
/// the IC rows to vanish beyond their two leading columns (the assembly
/// always produces exact zeros there). Throws SingularSystemError when a
/// pivot falls below 1e-14 times its row's original magnitude.
std::vector<double> solve_abd(const AbdMatrix& a, const RhsVector& rhs,
                              FlopCount* flops = nullptr);

/// In-place variant for hot loops.
void solve_abd_into(const AbdMatrix& a, const RhsVector& rhs, std::vector<double>& alpha,
                    AbdWorkspace& work, FlopCount* flops = nullptr);

/// For each coefficient, the highest 0-based row index it may depend on:
/// row 1 for the first two coefficients, then whole blocks at a time.
std::vector<int> dependence_profile(const AbdMatrix& a);

}  // namespace collox
