#include "smt/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smt {

RadialPhantom make_gaussian(double center, double width, double amplitude) {
    if (!(width > 0.0)) throw std::invalid_argument("make_gaussian: width must be > 0");
    RadialPhantom p;
    p.support_lo = std::max(1e-4, center - 7.0 * width);
    p.support_hi = std::min(0.99, center + 7.0 * width);
    if (!(p.support_lo < p.support_hi))
        throw std::invalid_argument("make_gaussian: empty support after clipping");
    const double lo = p.support_lo, hi = p.support_hi;
    p.eval = [center, width, amplitude, lo, hi](double r) {
        if (r < lo || r > hi) return 0.0;
        const double z = (r - center) / width;
        return amplitude * std::exp(-0.5 * z * z);
    };
    p.label = "gaussian(" + std::to_string(center) + "," + std::to_string(width) + "," +
              std::to_string(amplitude) + ")";
    return p;
}

RadialPhantom make_bump(double a, double b) {
    if (!(0.0 < a && a < b && b < 1.0)) throw std::invalid_argument("make_bump: need 0 < a < b < 1");
    RadialPhantom p;
    p.support_lo = a;
    p.support_hi = b;
    p.eval = [a, b](double r) {
        if (r <= a || r >= b) return 0.0;
        return r * r * (1.0 - r) * (1.0 - r);
    };
    p.label = "bump(" + std::to_string(a) + "," + std::to_string(b) + ")";
    return p;
}

RadialPhantom make_triangle() {
    RadialPhantom p;
    p.support_lo = 0.25;
    p.support_hi = 0.75;
    p.breakpoints = {0.5};
    p.eval = [](double r) {
        if (r <= 0.25 || r >= 0.75) return 0.0;
        return (r <= 0.5) ? 4.0 * r - 1.0 : 3.0 - 4.0 * r;
    };
    p.label = "triangle";
    return p;
}

RadialPhantom make_oscillatory(double freq) {
    RadialPhantom p;
    p.support_lo = 1e-4;
    p.support_hi = 0.99;
    p.eval = [freq, lo = p.support_lo, hi = p.support_hi](double r) {
        if (r < lo || r > hi) return 0.0;
        return std::cos(freq * r);
    };
    p.label = "oscillatory(" + std::to_string(freq) + ")";
    return p;
}

std::vector<ModePhantom> make_two_mode() {
    std::vector<ModePhantom> modes(2);
    modes[0].q = 0;
    modes[0].s = 1;
    modes[0].profile = make_oscillatory(50.0);
    modes[1].q = 1;
    modes[1].s = 2;
    modes[1].profile = make_gaussian(0.7, 0.05, 0.5);
    return modes;
}

RadialPhantom make_phantom(const std::string& name, const std::vector<double>& params) {
    auto arg = [&params](std::size_t i, double fallback) {
        return i < params.size() ? params[i] : fallback;
    };
    if (name == "gaussian") return make_gaussian(arg(0, 0.5), arg(1, 0.05), arg(2, 0.5));
    if (name == "bump") return make_bump(arg(0, 0.3), arg(1, 0.6));
    if (name == "triangle") return make_triangle();
    if (name == "oscillatory") return make_oscillatory(arg(0, 50.0));
    throw std::invalid_argument("make_phantom: unknown phantom '" + name + "'");
}

std::vector<std::pair<std::string, std::string>> phantom_registry() {
    return {
        {"gaussian", "amplitude*exp(-(r-center)^2/(2 width^2)); params center,width,amplitude "
                     "(defaults 0.5,0.05,0.5); support clipped at 7 widths"},
        {"bump", "r^2(1-r)^2 on (a,b); params a,b (defaults 0.3,0.6)"},
        {"triangle", "tent 4r-1 on (1/4,1/2], 3-4r on (1/2,3/4)"},
        {"oscillatory", "cos(freq*r) on [1e-4,0.99]; param freq (default 50)"},
        {"two-mode", "cos(50r) on Y_{0,1} plus gaussian(0.7,0.05,0.5) on Y_{1,2} (n=3)"},
    };
}

}  // namespace smt
