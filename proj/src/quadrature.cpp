#include "smt/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smt {

void check_integration_bounds(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("integrate: need a < b");
}

QuadratureRule gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    const std::size_t n = static_cast<std::size_t>(order);
    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    // Roots of P_n by Newton iteration started from the Chebyshev-like estimate;
    // P_n and P_n' evaluated by the three-term recurrence.
    for (std::size_t i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            if (order == 1) {
                p1 = x;  // P_1
            }
            for (int k = 2; k <= order; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            const double pn = (order == 1) ? x : p1;
            const double pn_1 = (order == 1) ? 1.0 : p0;
            dp = order * (x * pn - pn_1) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // The iteration above yields descending nodes; store ascending.
    for (std::size_t i = 0, j = n - 1; i < j; ++i, --j) {
        std::swap(rule.nodes[i], rule.nodes[j]);
        std::swap(rule.weights[i], rule.weights[j]);
    }
    return rule;
}

}  // namespace smt
