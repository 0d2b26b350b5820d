#pragma once

#include "smt/grid.hpp"

namespace smt {

// Local cubic (4-point Lagrange) interpolation of gridded samples.
// Exact at grid points and for polynomials up to degree 3; throws
// std::invalid_argument outside the grid hull.
double interpolate(const SampledFn& s, double t);

}  // namespace smt
