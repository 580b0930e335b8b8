#include "collox/spline.hpp"

#include <stdexcept>
#include <string>

#include "collox/basis.hpp"

namespace collox {

double eval_spline(const Spline& s, double x, int deriv) {
    if (deriv < 0 || deriv >= s.knots.order) {
        throw std::invalid_argument("eval_spline: deriv = " + std::to_string(deriv) +
                                    " outside [0, " + std::to_string(s.knots.order - 1) + "]");
    }
    thread_local LocalBasis lb;
    eval_basis_into(lb, s.knots, x, deriv + 1);
    double sum = 0.0;
    for (int i = 0; i < lb.order; ++i) {
        sum += s.coeffs[lb.first + i] * lb.at(deriv, i);
    }
    return sum;
}

}  // namespace collox
