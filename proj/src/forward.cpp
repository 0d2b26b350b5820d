#include "smt/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "smt/specfun.hpp"

namespace smt {

double q_kernel(double t, double u) {
    return ((1.0 + t) * (1.0 + t) - u * u) * (u * u - (1.0 - t) * (1.0 - t));
}

namespace {

// Integration window (1-t, 1) clipped to the phantom support; returns false
// when the sphere of radius t does not meet the support.
bool clip_window(const RadialPhantom& f, double t, double& a, double& b) {
    a = std::max(1.0 - t, f.support_lo);
    b = std::min(1.0, f.support_hi);
    return a < b;
}

}  // namespace

double forward_radial_h(const RadialPhantom& f, int k, double t, int quad_order) {
    if (k < 0) throw std::invalid_argument("forward_radial_h: k must be >= 0");
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("forward_radial_h: t must lie in (0,1]");
    double a = 0.0, b = 0.0;
    if (!clip_window(f, t, a, b)) return 0.0;
    const QuadratureRule rule = gauss_legendre(quad_order);
    return integrate_piecewise(
        [&](double u) {
            double qk = 1.0;
            const double qv = q_kernel(t, u);
            for (int i = 0; i < k; ++i) qk *= qv;
            return u * f(u) * qk;
        },
        a, b, f.breakpoints, rule);
}

double smt_from_h(double h, int n, double t) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("smt_from_h: n must be odd >= 3");
    if (!(t > 0.0)) throw std::invalid_argument("smt_from_h: t must be > 0");
    const int k = (n - 3) / 2;
    const double c = std::pow(4.0, k) * surface_area(2 * k + 2) / surface_area(2 * k + 1) *
                     std::pow(t, 2 * k + 1);
    return h / c;
}

double h_from_smt(double g, int n, double t) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("h_from_smt: n must be odd >= 3");
    if (!(t > 0.0)) throw std::invalid_argument("h_from_smt: t must be > 0");
    const int k = (n - 3) / 2;
    const double c = std::pow(4.0, k) * surface_area(2 * k + 2) / surface_area(2 * k + 1) *
                     std::pow(t, 2 * k + 1);
    return g * c;
}

double funk_hecke_oracle(const RadialPhantom& f, int n, double t, int quad_order) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("funk_hecke_oracle: n must be odd >= 3");
    if (!(t > 0.0 && t <= 1.0))
        throw std::invalid_argument("funk_hecke_oracle: t must lie in (0,1]");
    const int k = (n - 3) / 2;
    const double ratio = surface_area(n - 2) / surface_area(n - 1);
    // Substitute the radius variable u = sqrt(1+t^2-2 s t): s in (t/2, 1)
    // sweeps u over (1-t, sqrt(1+t^2-t^2...)); integrate in s directly and
    // split the panel wherever u crosses a phantom breakpoint or support edge.
    std::vector<double> s_breaks;
    auto s_of_u = [t](double u) { return (1.0 + t * t - u * u) / (2.0 * t); };
    std::vector<double> u_breaks = {f.support_lo, f.support_hi};
    u_breaks.insert(u_breaks.end(), f.breakpoints.begin(), f.breakpoints.end());
    for (double ub : u_breaks) {
        const double sb = s_of_u(ub);
        if (sb > 0.5 * t && sb < 1.0) s_breaks.push_back(sb);
    }
    std::sort(s_breaks.begin(), s_breaks.end());
    const QuadratureRule rule = gauss_legendre(quad_order);
    return ratio * integrate_piecewise(
                       [&](double s) {
                           const double u = std::sqrt(1.0 + t * t - 2.0 * s * t);
                           double w = 1.0;
                           const double base = 1.0 - s * s;
                           for (int i = 0; i < k; ++i) w *= base;
                           return f(u) * w;
                       },
                       0.5 * t, 1.0, s_breaks, rule);
}

SphereGrid SphereGrid::build(int n_theta, int n_phi) {
    if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("SphereGrid: degenerate grid");
    SphereGrid g;
    const QuadratureRule rule = gauss_legendre(n_theta);
    g.theta.resize(static_cast<std::size_t>(n_theta));
    g.theta_w = rule.weights;
    for (int i = 0; i < n_theta; ++i)
        g.theta[static_cast<std::size_t>(i)] = std::acos(rule.nodes[static_cast<std::size_t>(i)]);
    g.phi.resize(static_cast<std::size_t>(n_phi));
    for (int j = 0; j < n_phi; ++j)
        g.phi[static_cast<std::size_t>(j)] = 2.0 * std::numbers::pi * j / n_phi;
    g.phi_w = 2.0 * std::numbers::pi / n_phi;
    return g;
}

double sphere_quadrature_smt(const std::function<double(std::array<double, 3>)>& field,
                             const std::array<double, 3>& p, double t, const SphereGrid& grid) {
    if (grid.theta.empty() || grid.phi.empty())
        throw std::invalid_argument("sphere_quadrature_smt: degenerate grid");
    if (!(t > 0.0)) throw std::invalid_argument("sphere_quadrature_smt: t must be > 0");
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.theta.size(); ++i) {
        const double st = std::sin(grid.theta[i]);
        const double ct = std::cos(grid.theta[i]);
        double ring = 0.0;
        for (std::size_t j = 0; j < grid.phi.size(); ++j) {
            const std::array<double, 3> x = {p[0] + t * st * std::cos(grid.phi[j]),
                                             p[1] + t * st * std::sin(grid.phi[j]),
                                             p[2] + t * ct};
            ring += field(x);
        }
        acc += grid.theta_w[i] * ring;
    }
    return acc * grid.phi_w / (4.0 * std::numbers::pi);
}

double forward_mode(const ModePhantom& phantom, int n, double t, int quad_order) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("forward_mode: n must be odd >= 3");
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("forward_mode: t must lie in (0,1]");
    const RadialPhantom& f = phantom.profile;
    double a = 0.0, b = 0.0;
    if (!clip_window(f, t, a, b)) return 0.0;
    const int q = phantom.q;
    const double lam = 0.5 * (n - 2);
    const double cq1 = static_cast<double>(gegenbauer_at_one(q, n));
    const double scale = surface_area(n - 2) /
                         (std::pow(t, n - 2) * surface_area(n - 1) * cq1);
    const int khalf = (n - 3) / 2;  // exponent of (1-x^2)
    const QuadratureRule rule = gauss_legendre(quad_order);
    return scale * integrate_piecewise(
                       [&](double u) {
                           const double x = (1.0 + u * u - t * t) / (2.0 * u);
                           double w = 1.0;
                           const double base = 1.0 - x * x;
                           for (int i = 0; i < khalf; ++i) w *= base;
                           return std::pow(u, n - 2) * f(u) * gegenbauer(q, lam, x) * w;
                       },
                       a, b, f.breakpoints, rule);
}

double g_moments(int i, int j, const RadialPhantom& f, double t, int quad_order) {
    if (i < 0 || j < 0) throw std::invalid_argument("g_moments: i,j must be >= 0");
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("g_moments: t must lie in (0,1]");
    double a = 0.0, b = 0.0;
    if (!clip_window(f, t, a, b)) return 0.0;
    const QuadratureRule rule = gauss_legendre(quad_order);
    return integrate_piecewise(
        [&](double u) {
            const double qv = q_kernel(t, u);
            const double sv = u * u + 1.0 - t * t;
            double w = u * f(u);
            for (int a1 = 0; a1 < i; ++a1) w *= qv;
            for (int a2 = 0; a2 < j; ++a2) w *= sv;
            return w;
        },
        a, b, f.breakpoints, rule);
}

void add_uniform_noise(std::vector<double>& values, double amplitude, std::uint64_t seed) {
    if (amplitude < 0.0) throw std::invalid_argument("add_uniform_noise: amplitude must be >= 0");
    // Explicit bit mapping keeps the draw sequence identical across platforms
    // (no reliance on distribution implementations).
    std::mt19937_64 rng(seed);
    for (double& v : values) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
        v += amplitude * (2.0 * u - 1.0);
    }
}

SmtData add_noise(const SmtData& data, double amplitude, std::uint64_t seed) {
    SmtData out = data;
    add_uniform_noise(out.samples.values, amplitude, seed);
    out.noise = NoiseMeta{"uniform", amplitude, seed};
    return out;
}

double& FullSphereData::at(std::size_t i, std::size_t j, std::size_t l) {
    return values[(i * grid.phi.size() + j) * tgrid.size() + l];
}

double FullSphereData::at(std::size_t i, std::size_t j, std::size_t l) const {
    return values[(i * grid.phi.size() + j) * tgrid.size() + l];
}

std::vector<SmtData> decompose(const FullSphereData& data, int q_max) {
    if (q_max < 0) throw std::invalid_argument("decompose: q_max must be >= 0");
    const std::size_t nt = data.grid.theta.size();
    const std::size_t np = data.grid.phi.size();
    if (static_cast<int>(nt) < q_max + 1 || static_cast<int>(np) < 2 * q_max + 1)
        throw std::invalid_argument("decompose: angular grid does not resolve q_max");
    if (data.values.size() != nt * np * data.tgrid.size())
        throw std::invalid_argument("decompose: sample count mismatch");

    std::vector<SmtData> out;
    for (int q = 0; q <= q_max; ++q) {
        for (int s = 1; s <= 2 * q + 1; ++s) {
            SmtData mode;
            mode.n = 3;
            mode.kind = SmtData::Kind::mode;
            mode.q = q;
            mode.s = s;
            mode.samples.grid = data.tgrid;
            mode.samples.label = "g_{" + std::to_string(q) + "," + std::to_string(s) + "}";
            mode.samples.values.assign(data.tgrid.size(), 0.0);
            for (std::size_t i = 0; i < nt; ++i) {
                for (std::size_t j = 0; j < np; ++j) {
                    const double w = data.grid.theta_w[i] * data.grid.phi_w *
                                     real_sph_harm(q, s, data.grid.theta[i], data.grid.phi[j]);
                    for (std::size_t l = 0; l < data.tgrid.size(); ++l)
                        mode.samples.values[l] += w * data.at(i, j, l);
                }
            }
            out.push_back(std::move(mode));
        }
    }
    return out;
}

}  // namespace smt
