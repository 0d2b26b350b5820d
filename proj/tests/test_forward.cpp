#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "smt/forward.hpp"
#include "smt/phantom.hpp"
#include "smt/specfun.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

smt::RadialPhantom unit_phantom() {
    smt::RadialPhantom f;
    f.eval = [](double) { return 1.0; };
    f.support_lo = 0.0;
    f.support_hi = 1.0;
    f.label = "one";
    return f;
}

}  // namespace

TEST_CASE("kernel polynomial Q") {
    for (double t : {0.1, 0.37, 0.8})
        CHECK(smt::q_kernel(t, 1.0 - t) == doctest::Approx(0.0).epsilon(1e-15));
    for (double t : {0.25, 0.6})
        CHECK(smt::q_kernel(t, 1.0) == doctest::Approx(t * t * (4.0 - t * t)).epsilon(1e-14));
    CHECK(smt::q_kernel(0.5, 0.75) == doctest::Approx(0.52734375).epsilon(1e-15));
}

TEST_CASE("kernel-form forward integral against analytic values") {
    const auto one = unit_phantom();
    // Sphere misses the support entirely.
    const auto bump = smt::make_bump();  // support (0.3, 0.6)
    CHECK(smt::forward_radial_h(bump, 0, 0.2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(smt::forward_radial_h(bump, 2, 0.35) == doctest::Approx(0.0).epsilon(1e-15));
    // f = 1, k = 0: integral of u over (1-t,1) is t(2-t)/2.
    for (double t : {0.2, 0.5, 0.8}) {
        CHECK(smt::forward_radial_h(one, 0, t) ==
              doctest::Approx(t * (2.0 - t) / 2.0).epsilon(1e-12));
    }
    // f = 1, k = 1: antiderivative of u((1+t)^2-u^2)(u^2-(1-t)^2) is
    // -u^6/6 + (a+b)u^4/4 - ab u^2/2 with a=(1+t)^2, b=(1-t)^2.
    for (double t : {0.2, 0.5, 0.8}) {
        const double a = (1.0 + t) * (1.0 + t);
        const double b = (1.0 - t) * (1.0 - t);
        auto anti = [&](double u) {
            const double u2 = u * u;
            return -u2 * u2 * u2 / 6.0 + (a + b) * u2 * u2 / 4.0 - a * b * u2 / 2.0;
        };
        const double want = anti(1.0) - anti(1.0 - t);
        CHECK(smt::forward_radial_h(one, 1, t) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("transform scalings") {
    // n = 3: h = 2 t g.
    CHECK(smt::h_from_smt(1.0, 3, 0.4) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(smt::smt_from_h(0.8, 3, 0.4) == doctest::Approx(1.0).epsilon(1e-14));
    // Round-trip on assorted inputs.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    for (int n : {3, 5, 7, 9})
        for (int i = 0; i < 20; ++i) {
            const double t = unif(rng);
            const double g = unif(rng) - 0.5;
            CHECK(smt::h_from_smt(smt::smt_from_h(g * 1.0, n, t), n, t) ==
                  doctest::Approx(g).epsilon(1e-14));
            CHECK(smt::smt_from_h(smt::h_from_smt(g, n, t), n, t) ==
                  doctest::Approx(g).epsilon(1e-14));
        }
    // The two displayed normalizations agree: 4^k w_{2k+2}/w_{2k+1} =
    // 2^{n-3} w_{n-1}/w_{n-2} for n = 2k+3.
    for (int n : {3, 5, 7}) {
        const int k = (n - 3) / 2;
        const double lhs = std::pow(4.0, k) * smt::surface_area(2 * k + 2) /
                           smt::surface_area(2 * k + 1);
        const double rhs = std::pow(2.0, n - 3) * smt::surface_area(n - 1) /
                           smt::surface_area(n - 2);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

TEST_CASE("the two 1-d forward oracles agree on a smooth phantom") {
    const auto f = smt::make_gaussian(0.5, 0.05, 0.5);
    for (int n : {3, 5, 7}) {
        const int k = (n - 3) / 2;
        for (double t : {0.2, 0.4, 0.6, 0.8}) {
            const double via_kernel = smt::smt_from_h(smt::forward_radial_h(f, k, t), n, t);
            const double via_funk = smt::funk_hecke_oracle(f, n, t);
            CHECK(std::abs(via_kernel - via_funk) < 1e-8);
        }
    }
    CHECK(smt::funk_hecke_oracle(smt::make_bump(), 3, 0.2) ==
          doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("reduced integral matches a seeded Monte-Carlo sphere average") {
    const auto f = smt::make_gaussian(0.5, 0.05, 0.5);
    const double t = 0.5;
    const std::array<double, 3> p{0.0, 0.0, 1.0};
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uz(-1.0, 1.0), uphi(0.0, 2.0 * kPi);
    const int samples = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double z = uz(rng);
        const double phi = uphi(rng);
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const std::array<double, 3> x{p[0] + t * rho * std::cos(phi),
                                      p[1] + t * rho * std::sin(phi), p[2] + t * z};
        const double v = f(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / samples;
    const double var = std::max(0.0, sumsq / samples - mean * mean);
    const double stderr3 = 3.0 * std::sqrt(var / samples);
    const double oracle = smt::funk_hecke_oracle(f, 3, t);
    CHECK(std::abs(oracle - mean) < stderr3);
}

TEST_CASE("direct sphere quadrature") {
    const auto grid = smt::SphereGrid::build(12, 24);
    const std::array<double, 3> p{0.0, 0.0, 1.0};
    // Constant field averages to itself.
    CHECK(smt::sphere_quadrature_smt([](std::array<double, 3>) { return 2.5; }, p, 0.3, grid) ==
          doctest::Approx(2.5).epsilon(1e-13));
    // Linear field: the odd part integrates away, leaving p.e.
    const std::array<double, 3> e{0.3, -0.2, 0.9};
    auto linear = [&](std::array<double, 3> x) {
        return x[0] * e[0] + x[1] * e[1] + x[2] * e[2];
    };
    CHECK(smt::sphere_quadrature_smt(linear, p, 0.45, grid) ==
          doctest::Approx(e[2]).epsilon(1e-12));
    // Radial field: matches the reduced-integral oracle.
    const auto f = smt::make_gaussian(0.5, 0.05, 0.5);
    auto field = [&](std::array<double, 3> x) {
        return f(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    };
    // The sigma = 0.05 feature spans ~0.1 in cos(theta); resolve it properly.
    const auto fine = smt::SphereGrid::build(48, 24);
    for (double t : {0.3, 0.5, 0.7}) {
        const double via_sphere = smt::sphere_quadrature_smt(field, p, t, fine);
        CHECK(std::abs(via_sphere - smt::funk_hecke_oracle(f, 3, t)) < 1e-7);
    }
}

TEST_CASE("degree-0 mode forward reduces to the radial transform") {
    smt::ModePhantom mode;
    mode.q = 0;
    mode.s = 1;
    mode.profile = smt::make_gaussian(0.5, 0.05, 0.5);
    for (int n : {3, 5}) {
        const int k = (n - 3) / 2;
        for (double t : {0.3, 0.5, 0.7}) {
            const double radial =
                smt::smt_from_h(smt::forward_radial_h(mode.profile, k, t), n, t);
            CHECK(std::abs(smt::forward_mode(mode, n, t) - radial) < 1e-8);
        }
    }
    CHECK(smt::forward_mode(mode, 3, 0.1) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("degree-1 mode forward matches the full-sphere projection") {
    smt::ModePhantom mode;
    mode.q = 1;
    mode.s = 2;
    mode.profile = smt::make_gaussian(0.7, 0.05, 0.5);
    const double t = 0.5;

    smt::FullSphereData sphere;
    sphere.grid = smt::SphereGrid::build(4, 7);
    sphere.tgrid = smt::Grid1D::from_points({0.4, 0.5, 0.6});
    const std::size_t nt = sphere.grid.theta.size(), np = sphere.grid.phi.size(),
                      nl = sphere.tgrid.size();
    sphere.values.assign(nt * np * nl, 0.0);
    for (std::size_t l = 0; l < nl; ++l) {
        const double g = smt::forward_mode(mode, 3, sphere.tgrid.points[l]);
        for (std::size_t i = 0; i < nt; ++i)
            for (std::size_t j = 0; j < np; ++j)
                sphere.at(i, j, l) =
                    g * smt::real_sph_harm(1, 2, sphere.grid.theta[i], sphere.grid.phi[j]);
    }
    const auto modes = smt::decompose(sphere, 1);
    REQUIRE(modes.size() == 4);  // (0,1), (1,1), (1,2), (1,3)
    for (const auto& m : modes) {
        if (m.q == 1 && m.s == 2) {
            CHECK(std::abs(m.samples.values[1] - smt::forward_mode(mode, 3, t)) < 1e-6);
        } else {
            for (double v : m.samples.values) CHECK(std::abs(v) < 1e-9);
        }
    }
}

TEST_CASE("moment evaluator") {
    const auto f = smt::make_gaussian(0.5, 0.05, 0.5);
    for (int k : {0, 1, 2})
        for (double t : {0.3, 0.6, 0.8})
            CHECK(smt::g_moments(k, 0, f, t) ==
                  doctest::Approx(smt::forward_radial_h(f, k, t)).epsilon(1e-12));
    const auto one = unit_phantom();
    for (double t : {0.25, 0.5, 0.75}) {
        CHECK(smt::g_moments(0, 0, one, t) ==
              doctest::Approx(t * (2.0 - t) / 2.0).epsilon(1e-12));
        // integral of u(u^2+1-t^2) over (1-t,1): u^4/4 + (1-t^2)u^2/2.
        auto anti = [&](double u) {
            return u * u * u * u / 4.0 + (1.0 - t * t) * u * u / 2.0;
        };
        CHECK(smt::g_moments(0, 1, one, t) ==
              doctest::Approx(anti(1.0) - anti(1.0 - t)).epsilon(1e-10));
    }
}

TEST_CASE("noise injection is bounded, centered, and reproducible") {
    smt::SmtData data;
    data.n = 3;
    data.kind = smt::SmtData::Kind::radial;
    data.samples.grid = smt::Grid1D::linspace(0.01, 0.99, 10000);
    data.samples.values.assign(10000, 1.0);

    const auto same = smt::add_noise(data, 0.0, 5);
    CHECK(same.samples.values == data.samples.values);

    const auto a = smt::add_noise(data, 1e-7, 123);
    const auto b = smt::add_noise(data, 1e-7, 123);
    const auto c = smt::add_noise(data, 1e-7, 124);
    CHECK(a.samples.values == b.samples.values);
    CHECK(a.samples.values != c.samples.values);
    REQUIRE(a.noise.has_value());
    CHECK(a.noise->amplitude == 1e-7);
    CHECK(a.noise->seed == 123);
    CHECK(a.noise->distribution == "uniform");

    double mx = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < a.samples.values.size(); ++i) {
        const double d = a.samples.values[i] - data.samples.values[i];
        mx = std::max(mx, std::abs(d));
        mean += d;
    }
    mean /= static_cast<double>(a.samples.values.size());
    CHECK(mx <= 1e-7);
    CHECK(mx > 1e-8);  // not degenerate
    // Uniform(-amp,amp): sigma of the mean is amp/sqrt(3 N).
    CHECK(std::abs(mean) < 3.0 * 1e-7 / std::sqrt(3.0 * 10000.0));
}

TEST_CASE("decomposition of a constant-in-angle field") {
    smt::FullSphereData sphere;
    sphere.grid = smt::SphereGrid::build(5, 9);
    sphere.tgrid = smt::Grid1D::from_points({0.3, 0.6});
    const std::size_t nt = sphere.grid.theta.size(), np = sphere.grid.phi.size();
    sphere.values.assign(nt * np * 2, 0.0);
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < np; ++j) {
            sphere.at(i, j, 0) = 3.0;
            sphere.at(i, j, 1) = -1.0;
        }
    const auto modes = smt::decompose(sphere, 2);
    const double y00 = 1.0 / std::sqrt(4.0 * kPi);
    for (const auto& m : modes) {
        if (m.q == 0) {
            CHECK(m.samples.values[0] == doctest::Approx(3.0 / y00).epsilon(1e-12));
            CHECK(m.samples.values[1] == doctest::Approx(-1.0 / y00).epsilon(1e-12));
        } else {
            for (double v : m.samples.values) CHECK(std::abs(v) < 1e-10);
        }
    }
}
