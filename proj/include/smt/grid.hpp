#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace smt {

// One-dimensional sampling grid with strictly increasing points in (0,1].
// A grid is flagged uniform when consecutive spacings agree to within
// 1e-12 relative; several algorithms (stencil differentiation, the fixed-step
// ODE march) require that flag.
struct Grid1D {
    std::vector<double> points;
    bool uniform = false;
    double spacing = 0.0;  // meaningful iff uniform

    static Grid1D linspace(double a, double b, std::size_t count);
    static Grid1D from_points(std::vector<double> pts);

    std::size_t size() const { return points.size(); }
    double operator[](std::size_t i) const { return points[i]; }
    double front() const { return points.front(); }
    double back() const { return points.back(); }

    // Largest index i with points[i] <= t (requires t >= front()).
    std::size_t index_at_or_below(double t) const;
    // Smallest index i with points[i] >= t (requires t <= back()).
    std::size_t index_at_or_above(double t) const;
};

// Throws std::invalid_argument when the grid violates its invariants
// (monotonicity, range, uniform-spacing consistency).
void validate(const Grid1D& g);

// Real-valued samples over a grid.
struct SampledFn {
    Grid1D grid;
    std::vector<double> values;
    std::string label;
};

// Throws std::invalid_argument on length mismatch or non-finite values.
void validate(const SampledFn& s);

}  // namespace smt
