#include "smt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smt {

namespace {

bool spacing_is_uniform(const std::vector<double>& pts, double& spacing_out) {
    if (pts.size() < 2) return false;
    const double h = (pts.back() - pts.front()) / static_cast<double>(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (std::abs(pts[i + 1] - pts[i] - h) > 1e-12 * h) return false;
    }
    spacing_out = h;
    return true;
}

}  // namespace

Grid1D Grid1D::linspace(double a, double b, std::size_t count) {
    if (count < 2) throw std::invalid_argument("Grid1D::linspace: need at least 2 points");
    if (!(a < b)) throw std::invalid_argument("Grid1D::linspace: need a < b");
    Grid1D g;
    g.points.resize(count);
    const double h = (b - a) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) g.points[i] = a + h * static_cast<double>(i);
    g.points.back() = b;  // avoid rounding drift at the far end
    g.uniform = true;
    g.spacing = h;
    validate(g);
    return g;
}

Grid1D Grid1D::from_points(std::vector<double> pts) {
    Grid1D g;
    g.points = std::move(pts);
    double h = 0.0;
    g.uniform = spacing_is_uniform(g.points, h);
    g.spacing = g.uniform ? h : 0.0;
    validate(g);
    return g;
}

std::size_t Grid1D::index_at_or_below(double t) const {
    auto it = std::upper_bound(points.begin(), points.end(), t);
    if (it == points.begin()) throw std::invalid_argument("index_at_or_below: t below grid");
    return static_cast<std::size_t>(it - points.begin()) - 1;
}

std::size_t Grid1D::index_at_or_above(double t) const {
    auto it = std::lower_bound(points.begin(), points.end(), t);
    if (it == points.end()) throw std::invalid_argument("index_at_or_above: t above grid");
    return static_cast<std::size_t>(it - points.begin());
}

void validate(const Grid1D& g) {
    if (g.points.empty()) throw std::invalid_argument("Grid1D: empty");
    for (double p : g.points) {
        if (!std::isfinite(p) || p <= 0.0 || p > 1.0)
            throw std::invalid_argument("Grid1D: points must lie in (0,1]");
    }
    for (std::size_t i = 0; i + 1 < g.points.size(); ++i) {
        if (!(g.points[i] < g.points[i + 1]))
            throw std::invalid_argument("Grid1D: points must be strictly increasing");
    }
    if (g.uniform) {
        for (std::size_t i = 0; i + 1 < g.points.size(); ++i) {
            if (std::abs(g.points[i + 1] - g.points[i] - g.spacing) > 1e-12 * g.spacing)
                throw std::invalid_argument("Grid1D: uniform flag inconsistent with spacing");
        }
    }
}

void validate(const SampledFn& s) {
    validate(s.grid);
    if (s.values.size() != s.grid.size())
        throw std::invalid_argument("SampledFn: value/grid length mismatch");
    for (double v : s.values) {
        if (!std::isfinite(v)) throw std::invalid_argument("SampledFn: non-finite value");
    }
}

}  // namespace smt
