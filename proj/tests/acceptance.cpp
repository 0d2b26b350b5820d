// Acceptance gate: one scored check per release criterion, each printed as a
// single PASS/FAIL line with the measured figure and its pinned tolerance.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smt/coefficients.hpp"
#include "smt/forward.hpp"
#include "smt/identities.hpp"
#include "smt/interpolate.hpp"
#include "smt/inversion.hpp"
#include "smt/phantom.hpp"
#include "smt/specfun.hpp"

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void run(const std::string& name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double sec = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool in_time = sec < budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++g_failures;
    std::printf("[%s] %-34s %s (%.2fs / %.0fs)\n", pass ? "PASS" : "FAIL", name.c_str(),
                o.detail.c_str(), sec, budget_s);
    if (o.pass && !in_time) std::printf("       ^ over time budget\n");
    std::fflush(stdout);
}

smt::SmtData simulate_radial(const smt::RadialPhantom& f, int n, double tmin, double tmax,
                             std::size_t nodes, int quad) {
    const int k = (n - 3) / 2;
    smt::SmtData d;
    d.n = n;
    d.kind = smt::SmtData::Kind::radial;
    d.samples.grid = smt::Grid1D::linspace(tmin, tmax, nodes);
    d.samples.label = "g";
    d.samples.values.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        const double t = d.samples.grid[i];
        d.samples.values[i] = smt::smt_from_h(smt::forward_radial_h(f, k, t, quad), n, t);
    }
    return d;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// Relative L2 distance between two reconstructions sharing a grid.
double recon_distance(const smt::SampledFn& a, const smt::SampledFn& b, double lo, double hi) {
    auto ref = [&b](double r) { return smt::interpolate(b, r); };
    return smt::error_metrics(a, ref, lo, hi).rel_l2;
}

smt::LaurentPoly laurent_of(std::initializer_list<std::pair<long long, long long>> terms) {
    smt::LaurentPoly p;
    for (const auto& [e, c] : terms) p.add_term(e, smt::Rational(c));
    return p;
}

Outcome exact_identities() {
    const auto results = smt::exact_identity_suite(8, 8);
    std::size_t bad = 0;
    for (const auto& r : results)
        if (!(r.exact && r.pass)) ++bad;
    Outcome o;
    o.pass = bad == 0 && !results.empty();
    o.detail = std::to_string(results.size()) + " exact checks, " + std::to_string(bad) +
               " failed";
    return o;
}

Outcome displayed_odes() {
    using smt::Rational;
    const smt::CoeffTable t1 = smt::ode_coeffs(1);
    const smt::CoeffTable t2 = smt::ode_coeffs(2);
    const Rational p1 = smt::radial_prefactor(1);
    const Rational p2 = smt::radial_prefactor(2);
    bool ok = p1 == Rational(-4) && p2 == Rational(32);
    // Order-1 radial system: a1 = -8 (1-t)^2 / t, a0 = -8/t^2 + 8 t.
    ok = ok && smt::assembled_coeff(t1, 1, p1) ==
                   smt::laurent_from_binomial(Rational(-8), 2, 1);
    ok = ok && smt::assembled_coeff(t1, 0, p1) == laurent_of({{-2, -8}, {1, 8}});
    // Order-2 radial system: a2 = 128 (1-t)^3 / t^2,
    // a1 = 384 (1/t^3 - 1/t^2 - 1 + t), a0 = 384 (1/t^4 - t).
    ok = ok && smt::assembled_coeff(t2, 2, p2) ==
                   smt::laurent_from_binomial(Rational(128), 3, 2);
    ok = ok && smt::assembled_coeff(t2, 1, p2) ==
                   laurent_of({{-3, 384}, {-2, -384}, {0, -384}, {1, 384}});
    ok = ok && smt::assembled_coeff(t2, 0, p2) == laurent_of({{-4, 384}, {1, -384}});
    Outcome o;
    o.pass = ok;
    o.detail = ok ? "order-1 and order-2 tables match the closed forms exactly"
                  : "Laurent mismatch against the displayed systems";
    return o;
}

Outcome oracle_triangle() {
    const smt::RadialPhantom f = smt::make_gaussian(0.5, 0.05, 0.5);
    auto field = [&f](std::array<double, 3> x) {
        return f(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    };
    const smt::SphereGrid grid = smt::SphereGrid::build(48, 32);
    const std::array<double, 3> pole{0.0, 0.0, 1.0};
    double worst = 0.0;
    for (int n : {3, 5, 7}) {
        const int k = (n - 3) / 2;
        for (int i = 0; i < 20; ++i) {
            const double t = 0.1 + 0.8 * i / 19.0;
            const double via_kernel =
                smt::smt_from_h(smt::forward_radial_h(f, k, t, 96), n, t);
            const double via_oracle = smt::funk_hecke_oracle(f, n, t, 128);
            worst = std::max(worst, std::abs(via_kernel - via_oracle));
            if (n == 3) {
                const double via_sphere = smt::sphere_quadrature_smt(field, pole, t, grid);
                worst = std::max(worst, std::abs(via_sphere - via_oracle));
            }
        }
    }
    Outcome o;
    o.pass = worst <= 1e-7;
    o.detail = "max |disagreement| = " + fmt(worst) + " (tol 1e-7)";
    return o;
}

Outcome moment_identities() {
    const smt::RadialPhantom f = smt::make_gaussian(0.5, 0.05, 0.5);
    const auto results = smt::moment_identity_suite(f, 96);
    std::size_t bad = 0;
    double worst_ratio = 0.0;
    for (const auto& r : results) {
        if (!r.pass) ++bad;
        if (r.tolerance > 0.0) worst_ratio = std::max(worst_ratio, r.error / r.tolerance);
    }
    Outcome o;
    o.pass = bad == 0 && !results.empty();
    o.detail = std::to_string(results.size()) + " checks, worst error/tol = " +
               fmt(worst_ratio) + " (rel tol 1e-4)";
    return o;
}

Outcome fig_benchmark(int n, const smt::RadialPhantom& f, double tmin, double tmax,
                      std::size_t nodes, double lo, double hi, double tol,
                      std::optional<double> eps_prime = {}) {
    smt::SmtData data = simulate_radial(f, n, tmin, tmax, nodes, 64);
    smt::InversionOptions opt;
    opt.eps_prime = eps_prime;
    const auto rec = smt::invert_radial(data, opt);
    const auto m = smt::error_metrics(
        rec.profile, [&f](double r) { return f(r); }, lo, hi);
    Outcome o;
    o.pass = m.rel_l2 <= tol;
    o.detail = "rel L2 on [" + fmt(lo) + "," + fmt(hi) + "] = " + fmt(m.rel_l2) +
               " (tol " + fmt(tol) + ")";
    return o;
}

Outcome analytic_vs_rk() {
    const smt::RadialPhantom f = smt::make_gaussian(0.6, 0.05, 0.5);
    Outcome o;
    o.pass = true;

    // k = 1 pair on the n = 5 benchmark grid.
    {
        const smt::SmtData data = simulate_radial(f, 5, 0.05, 0.99, 300, 64);
        const auto rk = smt::invert_radial(data);
        const auto an = smt::analytic_invert_k1(data);
        const double d = recon_distance(an.profile, rk.profile, 0.3, 0.95);
        o.pass = o.pass && d <= 1e-4 && an.method == "analytic-k1";
        o.detail += "k1 dist " + fmt(d) + " (tol 1e-4)";
    }
    // k = 2 pair on the n = 7 benchmark grid.
    {
        smt::InversionOptions opt;
        opt.eps_prime = 0.15;
        const smt::SmtData data = simulate_radial(f, 7, 0.15, 0.95, 300, 64);
        const auto rk = smt::invert_radial(data, opt);
        const auto an = smt::analytic_invert_k2(data, opt);
        const double d = recon_distance(an.profile, rk.profile, 0.4, 0.9);
        o.pass = o.pass && d <= 5e-3 && an.method == "analytic-k2";
        o.detail += ", k2 dist " + fmt(d) + " (tol 5e-3)";
    }
    // Homogeneous pair: Wronskian closed form and ODE substitution.
    {
        const smt::CoeffTable t2 = smt::ode_coeffs(2);
        const smt::Rational p2 = smt::radial_prefactor(2);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double t = 0.1 + 0.8 * i / 19.0;
            const auto h = smt::n7_homogeneous(t);
            const double w_ref =
                2.0 * std::sqrt(3.0) * t * t * t * std::exp(-3.0 * t) / std::pow(1.0 - t, 9);
            worst = std::max(worst, std::abs(h.wronskian - w_ref) / std::abs(w_ref));
            const double a0 = smt::ode_coeff_eval(t2, 0, t, p2);
            const double a1 = smt::ode_coeff_eval(t2, 1, t, p2);
            const double a2 = smt::ode_coeff_eval(t2, 2, t, p2);
            for (const auto& [y, yp, ypp] :
                 {std::array<double, 3>{h.f1, h.f1p, h.f1pp},
                  std::array<double, 3>{h.f2, h.f2p, h.f2pp}}) {
                const double scale =
                    std::abs(a0 * y) + std::abs(a1 * yp) + std::abs(a2 * ypp);
                worst = std::max(worst, std::abs(a0 * y - a1 * yp + a2 * ypp) / scale);
            }
            const auto k5 = smt::n5_kernel(t);
            const double rhs = k5.y * (1.0 + t + t * t) / (t * (1.0 - t));
            worst = std::max(worst, std::abs(k5.yp - rhs) / std::abs(k5.yp));
        }
        o.pass = o.pass && worst <= 1e-6;
        o.detail += ", homogeneous rel err " + fmt(worst) + " (tol 1e-6)";
    }
    return o;
}

Outcome mode_pipeline() {
    const std::vector<smt::ModePhantom> phantoms = smt::make_two_mode();
    const smt::Grid1D tgrid = smt::Grid1D::linspace(0.01, 0.99, 300);
    const smt::SphereGrid grid = smt::SphereGrid::build(4, 7);

    smt::FullSphereData sphere;
    sphere.grid = grid;
    sphere.tgrid = tgrid;
    sphere.values.assign(grid.theta.size() * grid.phi.size() * tgrid.size(), 0.0);
    for (const auto& mode : phantoms) {
        std::vector<double> g(tgrid.size());
        for (std::size_t l = 0; l < tgrid.size(); ++l)
            g[l] = smt::forward_mode(mode, 3, tgrid[l], 64);
        for (std::size_t i = 0; i < grid.theta.size(); ++i)
            for (std::size_t j = 0; j < grid.phi.size(); ++j) {
                const double y = smt::real_sph_harm(mode.q, mode.s, grid.theta[i], grid.phi[j]);
                for (std::size_t l = 0; l < tgrid.size(); ++l)
                    sphere.at(i, j, l) += y * g[l];
            }
    }

    const std::vector<smt::SmtData> modes = smt::decompose(sphere, 1);
    double worst_res = 0.0;
    double worst_rel = 0.0;
    int matched = 0;
    for (const auto& mode : modes) {
        const smt::ModePhantom* truth = nullptr;
        for (const auto& p : phantoms)
            if (p.q == mode.q && p.s == mode.s) truth = &p;
        if (truth == nullptr) continue;
        ++matched;
        double res = 0.0, scale = 0.0;
        for (std::size_t l = 0; l < tgrid.size(); ++l) {
            const double direct = smt::forward_mode(*truth, 3, tgrid[l], 64);
            res = std::max(res, std::abs(mode.samples.values[l] - direct));
            scale = std::max(scale, std::abs(direct));
        }
        worst_res = std::max(worst_res, res / scale);
        const auto rec = smt::invert_mode(mode);
        const auto m = smt::error_metrics(
            rec.profile, [truth](double r) { return truth->profile(r); }, 0.2, 0.9);
        worst_rel = std::max(worst_rel, m.rel_l2);
    }
    Outcome o;
    o.pass = matched == 2 && worst_res <= 1e-6 && worst_rel <= 1e-2;
    o.detail = "decompose residual " + fmt(worst_res) + " (tol 1e-6), mode rel L2 " +
               fmt(worst_rel) + " (tol 1e-2)";
    return o;
}

Outcome noisy_benchmark() {
    const smt::RadialPhantom f = smt::make_gaussian(0.6, 0.05, 0.5);
    smt::SmtData data = simulate_radial(f, 5, 0.15, 0.95, 100, 64);
    data = smt::add_noise(data, 1e-7, 1);
    const auto rec = smt::invert_radial(data);
    auto truth = [&f](double r) { return f(r); };
    const auto main = smt::error_metrics(rec.profile, truth, 0.4, 0.9);
    const double inner_lo = std::max(rec.profile.grid.front(), 0.02);
    const auto near = smt::error_metrics(rec.profile, truth, inner_lo, 0.4);
    const bool degraded = near.rel_l2 > std::max(0.1, 3.0 * main.rel_l2);
    Outcome o;
    o.pass = main.rel_l2 <= 5e-2 && degraded;
    o.detail = "rel L2 on [0.4,0.9] = " + fmt(main.rel_l2) +
               " (tol 5e-2), near-origin rel " + fmt(near.rel_l2) +
               (degraded ? " flagged degraded" : " NOT flagged");
    return o;
}

Outcome truncation_causality() {
    // eps' is pinned to the common support gap on both solves; the auto
    // threshold scales with max|h| over the supplied data, so truncation
    // alone would move the detected gap and re-zero a band equal to the
    // phantom's own ~1e-8 tail, masking the solver property under test.
    const smt::RadialPhantom f = smt::make_gaussian(0.5, 0.05, 0.5);
    smt::InversionOptions opt;
    opt.eps_prime = 0.15;
    const smt::SmtData full = simulate_radial(f, 3, 0.001, 0.999, 3000, 64);
    const auto rec_full = smt::invert_radial(full, opt);
    double scale = 0.0;
    for (double v : rec_full.profile.values) scale = std::max(scale, std::abs(v));
    double worst = 0.0;
    for (double r0 : {0.3, 0.5}) {
        const std::size_t cut = full.samples.grid.index_at_or_below(1.0 - r0);
        smt::SmtData trunc = full;
        trunc.samples.grid = smt::Grid1D::from_points(std::vector<double>(
            full.samples.grid.points.begin(), full.samples.grid.points.begin() + cut + 1));
        trunc.samples.values.assign(full.samples.values.begin(),
                                    full.samples.values.begin() + cut + 1);
        const auto rec_trunc = smt::invert_radial(trunc, opt);
        for (std::size_t i = 0; i < rec_trunc.profile.grid.size(); ++i) {
            const double r = rec_trunc.profile.grid[i];
            if (r <= r0 + 1e-9) continue;
            const double ref = smt::interpolate(rec_full.profile, r);
            worst = std::max(worst, std::abs(rec_trunc.profile.values[i] - ref) / scale);
        }
    }
    Outcome o;
    o.pass = worst <= 1e-8;
    o.detail = "max truncation influence on (r0,1) = " + fmt(worst) + " (tol 1e-8)";
    return o;
}

}  // namespace

int main() {
    std::printf("acceptance gate\n---------------\n");

    run("01 exact combinatorial identities", 1.0, exact_identities);
    run("02 displayed inversion systems", 1.0, displayed_odes);
    run("03 forward oracle triangle", 10.0, oracle_triangle);
    run("04 moment identity suite", 30.0, moment_identities);
    run("05 n=3 gaussian benchmark", 5.0, [] {
        return fig_benchmark(3, smt::make_gaussian(0.5, 0.05, 0.5), 1e-4, 1.0, 150, 0.05,
                             0.95, 1e-3);
    });
    run("06 n=5 gaussian benchmark", 10.0, [] {
        return fig_benchmark(5, smt::make_gaussian(0.6, 0.05, 0.5), 0.05, 0.99, 300, 0.3,
                             0.95, 1e-2);
    });
    run("07 n=7 gaussian benchmark", 10.0, [] {
        return fig_benchmark(7, smt::make_gaussian(0.6, 0.05, 0.5), 0.15, 0.95, 300, 0.4,
                             0.9, 5e-2, 0.15);
    });
    run("08 analytic back-ends vs marcher", 10.0, analytic_vs_rk);
    run("09 harmonic mode pipeline", 30.0, mode_pipeline);
    run("10 noisy n=5 benchmark", 10.0, noisy_benchmark);
    run("11 truncation causality", 10.0, truncation_causality);

    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", g_failures);
    return g_failures;
}
