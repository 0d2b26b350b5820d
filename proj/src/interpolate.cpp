#include "smt/interpolate.hpp"

#include <algorithm>
#include <stdexcept>

namespace smt {

double interpolate(const SampledFn& s, double t) {
    const auto& x = s.grid.points;
    const int n = static_cast<int>(x.size());
    if (n < 2) throw std::invalid_argument("interpolate: need at least 2 points");
    if (t < x.front() || t > x.back())
        throw std::invalid_argument("interpolate: point outside grid hull");

    // Interval index i with x[i] <= t <= x[i+1].
    auto it = std::upper_bound(x.begin(), x.end(), t);
    int i = static_cast<int>(it - x.begin()) - 1;
    i = std::clamp(i, 0, n - 2);

    // 4-point neighborhood clamped inside the grid (3 points on tiny grids).
    const int npts = std::min(4, n);
    const int lo = std::clamp(i - 1, 0, n - npts);

    double acc = 0.0;
    for (int a = 0; a < npts; ++a) {
        double basis = 1.0;
        for (int b = 0; b < npts; ++b) {
            if (b == a) continue;
            basis *= (t - x[static_cast<std::size_t>(lo + b)]) /
                     (x[static_cast<std::size_t>(lo + a)] - x[static_cast<std::size_t>(lo + b)]);
        }
        acc += basis * s.values[static_cast<std::size_t>(lo + a)];
    }
    return acc;
}

}  // namespace smt
