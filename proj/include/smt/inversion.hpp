#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smt/differentiate.hpp"
#include "smt/forward.hpp"
#include "smt/grid.hpp"

namespace smt {

// D^r h for D = t^{-1} d/dt, expanded into ordinary derivatives:
// D^r h(t) = sum_{j=1..r} w_{r,j} h^(j)(t) / t^{2r-j}; r = 0 is the identity.
SampledFn apply_D_power(const SampledFn& h, int r, const DiffMethod& method = {});

// RHS of the inversion ODE: L(t) = d/dt D^r h, via the product-rule expansion
// L = sum_j w_{r,j} [ h^(j+1)/t^{2r-j} - (2r-j) h^(j)/t^{2r-j+1} ];
// r = 0 gives the plain derivative h'.
SampledFn assemble_rhs(const SampledFn& h, int r, const DiffMethod& method = {});

// Largest grid point eps' such that max|h| <= threshold on the prefix
// (0, eps']; the first grid point when even it exceeds the threshold.
double detect_support_gap(const SampledFn& h, double threshold);

struct InversionOptions {
    DiffMethod diff{};
    double eps = 1e-6;                      // reconstruct radii in (eps, 1)
    std::optional<double> eps_prime;        // empty -> auto-detect
    double detect_threshold_rel = 1e-9;     // auto threshold = rel * max|h|
    int quad_order = 64;                    // used by callers that simulate
};

struct ErrorMetrics {
    double rel_l2 = 0.0;
    double max_abs = 0.0;
    double interval_lo = 0.0;
    double interval_hi = 0.0;
    bool absolute = false;  // true when the truth norm vanished on the interval
};

struct ReconstructionResult {
    SampledFn profile;  // f(r) (or f_{q,s}(r)) on ascending radii
    double eps_prime = 0.0;
    std::string method;  // "ode" | "analytic-k0" | "analytic-k1" | "analytic-k2"
    int ode_order = 0;   // K
    int q = 0, s = 1;    // mode indices when applicable
    std::optional<ErrorMetrics> metrics;  // filled by round-trip drivers
};

// Radial inversion (any odd n >= 3): scale data to h with the 4^k
// normalization, assemble L = d/dt D^{2k} h, substitute y(t) = f(1-t) and
// integrate sum_m (-1)^m a_m(t) y^(m)(t) = L(t) upward from eps' with zero
// initial state (classical RK4 at the grid step; k = 0 is algebraic).
// The profile is extended by zero on [1-eps', 1).
ReconstructionResult invert_radial(const SmtData& data, const InversionOptions& options = {});

// Mode inversion (mode-data scaling, no 4^k factor): order K = q+k system
// with the mode prefactor; recovers ftilde and reports f_{q,s}(r) = r^q ftilde(r).
ReconstructionResult invert_mode(const SmtData& data, const InversionOptions& options = {});

// Closed-form back-end for n = 5 (k = 1):
// f(1-t) = t e^{-t} / (8 (1-t)^3) * integral_{eps'}^{t} (1-u) e^u L(u) du.
ReconstructionResult analytic_invert_k1(const SmtData& data, const InversionOptions& options = {});

// Closed-form back-end for n = 7 (k = 2), variation of parameters:
// f(1-t) = -f1(t) I[f2 L R] + f2(t) I[f1 L R], R(s) = s^2/(128 (1-s)^3 W(s)),
// I the cumulative integral from eps'.
ReconstructionResult analytic_invert_k2(const SmtData& data, const InversionOptions& options = {});

// The homogeneous pair and Wronskian behind analytic_invert_k2, with exact
// first and second derivatives (for substitution checks):
// f1 = e^{-3t/2} [(t-2t^2) cos(sqrt3 t/2) + sqrt3 t sin(sqrt3 t/2)] / (1-t)^5,
// f2 = e^{-3t/2} [sqrt3 t cos(sqrt3 t/2) - (t-2t^2) sin(sqrt3 t/2)] / (1-t)^5,
// W = f1 f2' - f1' f2 = 2 sqrt3 t^3 e^{-3t} / (1-t)^9.
struct N7Homogeneous {
    double f1, f1p, f1pp;
    double f2, f2p, f2pp;
    double wronskian;
};
N7Homogeneous n7_homogeneous(double t);

// Homogeneous kernel of the n = 5 ODE with its exact derivative:
// y = t e^{-t}/(1-t)^3,  y' = e^{-t} (1+t+t^2)/(1-t)^4.
struct N5Kernel {
    double y, yp;
};
N5Kernel n5_kernel(double t);

// Superposition of recovered modes on a product grid:
// f(r_l, theta_i, phi_j) = sum_modes f_{q,s}(r_l) Y_{q,s}(theta_i, phi_j).
// All mode profiles must share one radial grid. Values r-fastest:
// index ((i*n_phi)+j)*n_r + l.
struct FieldSamples {
    SphereGrid grid;
    Grid1D radii;
    std::vector<double> values;
};
FieldSamples recombine(const std::vector<ReconstructionResult>& modes, const SphereGrid& grid);

// Trapezoid-weighted relative L2 and max-abs of rec against an analytic truth
// over [a,b] (grid points of rec inside the interval). When the truth norm
// vanishes there, absolute norms are reported and `absolute` is set.
ErrorMetrics error_metrics(const SampledFn& rec, const std::function<double(double)>& truth,
                           double a, double b);

}  // namespace smt
