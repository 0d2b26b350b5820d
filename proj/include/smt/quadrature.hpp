#pragma once

#include <utility>
#include <vector>

namespace smt {

// Gauss-Legendre rule on the reference interval (-1,1).
struct QuadratureRule {
    std::vector<double> nodes;    // ascending, in (-1,1)
    std::vector<double> weights;  // positive, sum to 2
    int order = 0;                // number of nodes; exact for degree <= 2*order-1
};

// Nodes/weights by Newton iteration on the Legendre polynomial.
QuadratureRule gauss_legendre(int order);

// Affinely mapped quadrature estimate of the integral of f over [a,b].
// Throws std::invalid_argument when a >= b.
void check_integration_bounds(double a, double b);

template <class F>
double integrate(F&& f, double a, double b, const QuadratureRule& rule) {
    check_integration_bounds(a, b);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < rule.order; ++i) {
        acc += rule.weights[static_cast<std::size_t>(i)] *
               f(mid + half * rule.nodes[static_cast<std::size_t>(i)]);
    }
    return half * acc;
}

// Same integral split at the given interior breakpoints (those inside (a,b));
// each smooth panel gets the full rule.
template <class F>
double integrate_piecewise(F&& f, double a, double b, const std::vector<double>& breakpoints,
                           const QuadratureRule& rule) {
    check_integration_bounds(a, b);
    double acc = 0.0;
    double left = a;
    for (double bp : breakpoints) {  // assumed ascending
        if (bp <= left) continue;
        if (bp >= b) break;
        acc += integrate(f, left, bp, rule);
        left = bp;
    }
    acc += integrate(f, left, b, rule);
    return acc;
}

}  // namespace smt
