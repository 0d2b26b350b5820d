#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace smt {

// Analytic radial profile, compactly supported in the open unit ball:
// eval(r) = 0 outside [support_lo, support_hi] with support_hi < 1.
// `breakpoints` lists interior smoothness breaks (panel splits for
// quadrature); the support endpoints always act as breaks.
struct RadialPhantom {
    std::function<double(double)> eval;
    double support_lo = 0.0;
    double support_hi = 0.0;
    std::vector<double> breakpoints;  // ascending, inside (support_lo, support_hi)
    std::string label;

    double operator()(double r) const { return eval(r); }
};

// One spherical-harmonic component: the radial profile f_{q,s}.
struct ModePhantom {
    int q = 0;
    int s = 1;
    RadialPhantom profile;
};

// Registry builders (parameters default to the reference experiments).

// amplitude * exp(-(r-center)^2 / (2 width^2)), clipped to
// [center - 7 width, center + 7 width] intersected with [1e-4, 0.99].
// The 7-sigma clip keeps the support jump below 1e-11 of the amplitude so the
// profile stays effectively smooth for high-order differentiation.
RadialPhantom make_gaussian(double center, double width, double amplitude);

// r^2 (1-r)^2 on (a,b), zero elsewhere; defaults (0.3, 0.6).
RadialPhantom make_bump(double a = 0.3, double b = 0.6);

// Piecewise-linear tent: 4r-1 on (1/4,1/2], 3-4r on (1/2,3/4), zero elsewhere.
RadialPhantom make_triangle();

// cos(freq * r) on [1e-4, 0.99]; not decaying at the outer boundary, so only
// order-0 (algebraic) inversions handle it without initial-condition error.
RadialPhantom make_oscillatory(double freq = 50.0);

// The two-mode reference field: f = f01(r) Y_{0,1} + f12(r) Y_{1,2} with
// f01 = cos(50 r) and f12 the Gaussian at 0.7.
std::vector<ModePhantom> make_two_mode();

// Phantom registry lookup by name: "gaussian", "bump", "triangle",
// "oscillatory". Parameters: gaussian takes {center, width, amplitude},
// bump {a, b}, oscillatory {freq}; empty vectors select the defaults of the
// reference figures. Throws std::invalid_argument for unknown names.
RadialPhantom make_phantom(const std::string& name, const std::vector<double>& params);

// Names and one-line descriptions for the CLI listing.
std::vector<std::pair<std::string, std::string>> phantom_registry();

}  // namespace smt
