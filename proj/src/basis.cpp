#include "collox/basis.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace collox {

namespace {
constexpr int kMaxOrder = 20;
}

void eval_local_basis_into(LocalBasis& out, std::span<const double> knots, int order,
                           int interval, double x, int nderiv) {
    const int k = order;
    if (k < 1 || k > kMaxOrder) {
        throw std::invalid_argument("eval_local_basis: order outside [1, 20]");
    }
    if (nderiv < 1 || nderiv > k) {
        throw std::invalid_argument("eval_local_basis: nderiv = " + std::to_string(nderiv) +
                                    " outside [1, " + std::to_string(k) + "]");
    }

    out.interval = interval;
    out.first = interval - k + 1;
    out.order = k;
    out.nderiv = nderiv;
    out.table.resize(static_cast<std::size_t>(nderiv) * k);

    // vals(m, i) = B of order m+1 with global index (interval - m + i), for
    // i = 0..m; these are the only order-(m+1) B-splines alive on the interval.
    std::array<double, kMaxOrder * kMaxOrder> vals;
    const auto v = [&](int m, int i) -> double& { return vals[m * k + i]; };

    v(0, 0) = 1.0;
    for (int m = 1; m < k; ++m) {
        for (int i = 0; i <= m; ++i) {
            const int g = interval - m + i;  // global index of B_{g, m+1}
            double acc = 0.0;
            if (i >= 1) {  // left term vanishes for the leading index
                const double den = knots[g + m] - knots[g];
                if (den != 0.0) {
                    acc += (x - knots[g]) / den * v(m - 1, i - 1);
                }
            }
            if (i <= m - 1) {  // right term vanishes for the trailing index
                const double den = knots[g + m + 1] - knots[g + 1];
                if (den != 0.0) {
                    acc += (knots[g + m + 1] - x) / den * v(m - 1, i);
                }
            }
            v(m, i) = acc;
        }
    }
    for (int i = 0; i < k; ++i) {
        out.at(0, i) = v(k - 1, i);
    }

    if (nderiv == 1) {
        return;
    }

    // D^d B_{g,k} = sum_r c_d[r] B_{g+r, k-d}: one application of the
    // derivative relation per step, coefficients kept per target spline.
    const double* t = knots.data();
    const auto accumulate = [&](double& sum, double c, int m, int g) {
        const int local = g - (interval - m);
        if (local >= 0 && local <= m && c != 0.0) {
            sum += c * v(m, local);
        }
    };

    if (nderiv <= 3) {  // the collocation hot path: first and second derivative
        const int m1 = k - 2;
        for (int i = 0; i < k; ++i) {
            const int g = out.first + i;
            double c10 = 0.0, c11 = 0.0;
            {
                const double den0 = t[g + k - 1] - t[g];
                if (den0 != 0.0) c10 = static_cast<double>(k - 1) * (1.0 - 0.0) / den0;
                const double den1 = t[g + k] - t[g + 1];
                if (den1 != 0.0) c11 = static_cast<double>(k - 1) * (0.0 - 1.0) / den1;
            }
            double sum1 = 0.0;
            accumulate(sum1, c10, m1, g);
            accumulate(sum1, c11, m1, g + 1);
            out.at(1, i) = sum1;

            if (nderiv == 3) {
                const int ord = k - 2;
                double c20 = 0.0, c21 = 0.0, c22 = 0.0;
                const double den0 = t[g + ord] - t[g];
                if (den0 != 0.0) c20 = static_cast<double>(ord) * (c10 - 0.0) / den0;
                const double den1 = t[g + 1 + ord] - t[g + 1];
                if (den1 != 0.0) c21 = static_cast<double>(ord) * (c11 - c10) / den1;
                const double den2 = t[g + 2 + ord] - t[g + 2];
                if (den2 != 0.0) c22 = static_cast<double>(ord) * (0.0 - c11) / den2;
                double sum2 = 0.0;
                const int m2 = k - 3;
                accumulate(sum2, c20, m2, g);
                accumulate(sum2, c21, m2, g + 1);
                accumulate(sum2, c22, m2, g + 2);
                out.at(2, i) = sum2;
            }
        }
        return;
    }

    std::array<double, kMaxOrder> coef;
    std::array<double, kMaxOrder> next;
    for (int i = 0; i < k; ++i) {
        const int g = out.first + i;
        coef[0] = 1.0;
        for (int d = 1; d < nderiv; ++d) {
            const int ord = k - d;  // order of the splines after this step
            for (int r = 0; r <= d; ++r) {
                const double den = knots[g + r + ord] - knots[g + r];
                double c = 0.0;
                if (den != 0.0) {
                    const double hi = (r <= d - 1) ? coef[r] : 0.0;
                    const double lo = (r >= 1) ? coef[r - 1] : 0.0;
                    c = static_cast<double>(ord) * (hi - lo) / den;
                }
                next[r] = c;
            }
            for (int r = 0; r <= d; ++r) {
                coef[r] = next[r];
            }
            double sum = 0.0;
            const int m = ord - 1;  // row of vals holding order-(k-d) values
            for (int r = 0; r <= d; ++r) {
                const int local = g + r - (interval - m);
                if (local >= 0 && local <= m && coef[r] != 0.0) {
                    sum += coef[r] * v(m, local);
                }
            }
            out.at(d, i) = sum;
        }
    }
}

LocalBasis eval_local_basis(std::span<const double> knots, int order, int interval, double x,
                            int nderiv) {
    LocalBasis out;
    eval_local_basis_into(out, knots, order, interval, x, nderiv);
    return out;
}

void eval_basis_into(LocalBasis& out, const KnotVector& kv, double x, int nderiv) {
    eval_local_basis_into(out, kv.knots, kv.order, find_interval(kv, x), x, nderiv);
}

LocalBasis eval_basis(const KnotVector& kv, double x, int nderiv) {
    LocalBasis out;
    eval_local_basis_into(out, kv.knots, kv.order, find_interval(kv, x), x, nderiv);
    return out;
}

}  // namespace collox
