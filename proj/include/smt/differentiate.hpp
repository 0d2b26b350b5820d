#pragma once

#include <string>

#include "smt/grid.hpp"

namespace smt {

// Numerical differentiation method for gridded samples.
//
//  - local_polyfit: least-squares polynomial fit of `degree` over a sliding
//    window of `window` points; the derivative of the fit is read off at the
//    window's anchor point. Defaults (degree = d+4, window = 2d+9) damp
//    round-off noise when estimating the d-th derivative.
//  - central_stencil: interpolatory finite-difference weights on `width`
//    consecutive points (centered in the interior, shifted one-sided at the
//    boundaries, never extrapolating beyond the grid).
struct DiffMethod {
    enum class Kind { local_polyfit, central_stencil };
    Kind kind = Kind::local_polyfit;
    int degree = -1;  // local_polyfit; -1 selects d+4
    int window = -1;  // local_polyfit; -1 selects 2d+9
    int width = -1;   // central_stencil; -1 selects 2*((d+1)/2)+5

    // Accepts "polyfit", "polyfit:degree=8,window=17", "stencil:width=9".
    static DiffMethod parse(const std::string& text);
    std::string to_string() const;

    int effective_degree(int d) const { return degree > 0 ? degree : d + 4; }
    int effective_window(int d) const { return window > 0 ? window : 2 * d + 9; }
    int effective_width(int d) const { return width > 0 ? width : 2 * ((d + 1) / 2) + 5; }
};

// d-th derivative samples on the same grid.
SampledFn differentiate(const SampledFn& s, int d, const DiffMethod& method = {});

// Interpolatory differentiation weights: w[i] such that
// sum_i w[i]*f(x[i]) approximates f^(d)(z). Exact for polynomials of degree
// < len(x). Classic divided-difference recursion (works for arbitrary nodes).
std::vector<double> stencil_weights(double z, const std::vector<double>& x, int d);

}  // namespace smt
