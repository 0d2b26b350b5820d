#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smt/grid.hpp"
#include "smt/phantom.hpp"
#include "smt/quadrature.hpp"

namespace smt {

// Provenance record for injected noise.
struct NoiseMeta {
    std::string distribution;  // "uniform"
    double amplitude = 0.0;
    std::uint64_t seed = 0;
};

// Sampled transform data g(t) for one dimension/kind.
struct SmtData {
    int n = 3;  // odd space dimension
    enum class Kind { radial, mode, full_sphere };
    Kind kind = Kind::radial;
    int q = 0, s = 1;  // meaningful for kind == mode
    SampledFn samples;
    std::optional<NoiseMeta> noise;
};

// Q(t,u) = ((1+t)^2 - u^2)(u^2 - (1-t)^2); vanishes at u = 1-t.
double q_kernel(double t, double u);

// h_k(t) = integral over u in (1-t,1) of u f(u) Q(t,u)^k, window clipped to
// the phantom support and split at its breakpoints.
double forward_radial_h(const RadialPhantom& f, int k, double t, int quad_order = 64);

// Scaling between h_k and the transform average g = Rf(p,t):
// h = 4^k omega_{2k+2} t^{2k+1} / omega_{2k+1} * g  with  k = (n-3)/2
// (equivalently h = g t^{n-2} / C_n, C_n = omega_{n-2}/(omega_{n-1} 2^{n-3})).
double smt_from_h(double h, int n, double t);
double h_from_smt(double g, int n, double t);

// Independent oracle for Rf(p,t) at |p| = 1: the reduced one-dimensional
// integral (omega_{n-2}/omega_{n-1}) * integral_{s=t/2}^{1}
// f(sqrt(1+t^2-2 s t)) (1-s^2)^{(n-3)/2} ds.
double funk_hecke_oracle(const RadialPhantom& f, int n, double t, int quad_order = 128);

// Product quadrature grid on the unit sphere S^2: Gauss-Legendre in cos(theta)
// crossed with a uniform trapezoid in phi. Integrates spherical harmonics
// exactly up to degree min(2*n_theta-1, n_phi-1).
struct SphereGrid {
    std::vector<double> theta;     // n_theta polar angles
    std::vector<double> theta_w;   // Gauss-Legendre weights (sum 2)
    std::vector<double> phi;       // n_phi azimuths, uniform on [0, 2pi)
    double phi_w = 0.0;            // 2*pi / n_phi

    static SphereGrid build(int n_theta, int n_phi);
};

// Surface average over the sphere of radius t centered at p (n = 3):
// (1/(4*pi)) * integral of F(p + t*theta) over the unit sphere.
double sphere_quadrature_smt(const std::function<double(std::array<double, 3>)>& field,
                             const std::array<double, 3>& p, double t, const SphereGrid& grid);

// Per-mode forward operator g_{q,s}(t): with x(u) = (1+u^2-t^2)/(2u),
//   g = omega_{n-2} / (t^{n-2} omega_{n-1} C_q^{(n-2)/2}(1)) *
//       integral u^{n-2} f_{q,s}(u) C_q^{(n-2)/2}(x) (1-x^2)^{(n-3)/2} du
// over u in (1-t,1) clipped to the profile support.
double forward_mode(const ModePhantom& phantom, int n, double t, int quad_order = 64);

// Moment family G_{i,j}(t) = integral u f(u) Q(t,u)^i (u^2+1-t^2)^j du over
// the same window; G_{k,0} = h_k.
double g_moments(int i, int j, const RadialPhantom& f, double t, int quad_order = 64);

// In-place i.i.d. uniform(-amplitude, amplitude) perturbation from a
// deterministic seeded generator (explicit bit mapping, platform-stable).
void add_uniform_noise(std::vector<double>& values, double amplitude, std::uint64_t seed);

// Adds the same noise to transform samples; records metadata on the result.
SmtData add_noise(const SmtData& data, double amplitude, std::uint64_t seed);

// Full-sphere samples g(theta_i, phi_j, t_l) for n = 3, stored t-fastest.
struct FullSphereData {
    SphereGrid grid;
    Grid1D tgrid;
    std::vector<double> values;  // size n_theta*n_phi*n_t, index ((i*n_phi)+j)*n_t + l

    double& at(std::size_t i, std::size_t j, std::size_t l);
    double at(std::size_t i, std::size_t j, std::size_t l) const;
};

// Projection onto real spherical harmonics: g_{q,s}(t) =
// sum_grid w_theta * w_phi * g(theta,phi,t) * Y_{q,s}(theta,phi), for all
// q <= q_max, s = 1..2q+1. Requires angular resolution for degree q_max.
std::vector<SmtData> decompose(const FullSphereData& data, int q_max);

}  // namespace smt
