#include "smt/identities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "smt/coefficients.hpp"
#include "smt/differentiate.hpp"
#include "smt/forward.hpp"
#include "smt/specfun.hpp"

namespace smt {

namespace {

LaurentPoly scaled(const LaurentPoly& p, const Rational& c) {
    LaurentPoly out;
    for (const auto& [e, v] : p.coeff) out.add_term(e, c * v);
    return out;
}

CheckResult exact_result(const std::string& name, int mismatches, const std::string& detail) {
    CheckResult r;
    r.name = name;
    r.exact = true;
    r.pass = (mismatches == 0);
    r.error = static_cast<double>(mismatches);
    r.detail = detail;
    return r;
}

// Centered first derivative of a black-box function of t.
double fd1(const std::function<double(double)>& F, double t, double step) {
    return (F(t + step) - F(t - step)) / (2.0 * step);
}

// D^r F at t for D = t^{-1} d/dt: ordinary derivatives from an interpolatory
// stencil on a symmetric width-point window of spacing step, recombined with
// the exact operator weights.
double d_power_fd(const std::function<double(double)>& F, int r, double t, double step,
                  int width = 9) {
    if (r == 0) return F(t);
    std::vector<double> xs(static_cast<std::size_t>(width));
    std::vector<double> fs(static_cast<std::size_t>(width));
    const int half = width / 2;
    for (int i = 0; i < width; ++i) {
        xs[static_cast<std::size_t>(i)] = t + (i - half) * step;
        fs[static_cast<std::size_t>(i)] = F(xs[static_cast<std::size_t>(i)]);
    }
    const std::vector<Rational> w = d_weights(r);
    double acc = 0.0;
    for (int j = 1; j <= r; ++j) {
        const std::vector<double> sw = stencil_weights(t, xs, j);
        double dj = 0.0;
        for (std::size_t i = 0; i < sw.size(); ++i) dj += sw[i] * fs[i];
        acc += static_cast<double>(w[static_cast<std::size_t>(j - 1)]) * dj /
               std::pow(t, 2 * r - j);
    }
    return acc;
}

// Scale-relative comparison of two sampled identity sides.
CheckResult numeric_result(const std::string& name, const std::vector<double>& lhs,
                           const std::vector<double>& rhs, double tolerance) {
    double scale = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        scale = std::max(scale, std::abs(rhs[i]));
        worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
    }
    CheckResult r;
    r.name = name;
    r.tolerance = tolerance;
    r.error = worst / std::max(scale, 1e-300);
    r.pass = (r.error <= tolerance);
    return r;
}

}  // namespace

std::vector<CheckResult> exact_identity_suite(int lmax, int kmax) {
    std::vector<CheckResult> out;

    {  // Closed form vs defining sum.
        int bad = 0, total = 0;
        for (int l = 1; l <= lmax; ++l)
            for (int n = 0; n <= l; ++n)
                for (int m = 1; m <= n; ++m) {
                    ++total;
                    if (coeff_E(n, m, l) != coeff_E_sum(n, m, l)) ++bad;
                }
        std::ostringstream d;
        d << total << " triples, l <= " << lmax;
        out.push_back(exact_result("E closed form = defining sum", bad, d.str()));
    }

    {  // Vanishing pattern and the unit entry.
        int bad = 0, total = 0;
        for (int l = 1; l <= lmax; ++l) {
            for (int m = 0; m <= l; ++m) {
                ++total;
                if (coeff_E(l, m, l) != 0) ++bad;
            }
            for (int m = 1; m <= l; ++m) {
                ++total;
                if (coeff_E(m - 1, m, l) != 0) ++bad;
            }
            ++total;
            if (coeff_E(l - 1, l, l) != 0) ++bad;
        }
        ++total;
        if (coeff_E(1, 1, 2) != 1) ++bad;
        std::ostringstream d;
        d << total << " entries";
        out.push_back(exact_result("E vanishing pattern, E_{1,1,2} = 1", bad, d.str()));
    }

    {  // Inner-sum collapse.
        int bad = 0, total = 0;
        for (int k = 0; k <= kmax; ++k)
            for (int l = 0; l <= k; ++l) {
                ++total;
                const auto [lhs, rhs] = inner_sum_check(k, l);
                if (lhs != rhs) ++bad;
            }
        std::ostringstream d;
        d << total << " pairs, k <= " << kmax;
        out.push_back(exact_result("inner sum = 2^l (2k-l)!/(k-l)!", bad, d.str()));
    }

    {  // Leading-coefficient law (prefactor 1).
        int bad = 0;
        for (int K = 0; K <= 6; ++K) {
            const CoeffTable table = ode_coeffs(K);
            const LaurentPoly lead = assembled_coeff(table, K, Rational(1));
            const LaurentPoly ref =
                laurent_from_binomial(Rational(pow2_big(K), 1), K + 1, K);
            if (!(lead == ref)) ++bad;
        }
        out.push_back(exact_result("a_K = prefactor 2^K (1-t)^{K+1}/t^K", bad, "K <= 6"));
    }

    {  // P_{0,l} vs the operator-weight expansion (sign-corrected).
        int bad = 0;
        for (int l = 1; l <= 6; ++l) {
            const LaurentPoly lhs = p0l_from_E(l);
            LaurentPoly rhs = d_power_of_kernel(l - 1, l);
            if (l % 2 == 0) rhs = scaled(rhs, Rational(-1));
            if (!(lhs == rhs)) ++bad;
        }
        out.push_back(
            exact_result("P_{0,l} = (-1)^{l-1} D^{l-1}{(1-t)^{l+1}/t}", bad, "l <= 6"));
    }

    return out;
}

std::vector<CheckResult> moment_identity_suite(const RadialPhantom& f, int quad_order) {
    std::vector<CheckResult> out;
    const std::vector<double> ts = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
    const double step1 = 1e-4;  // first-derivative central differences
    const double stepD = 1e-3;  // multi-order D-power stencils

    auto G = [&](int i, int j) {
        return std::function<double(double)>(
            [&f, i, j, quad_order](double t) { return g_moments(i, j, f, t, quad_order); });
    };

    {  // d/dt G_{0,0} = (1-t) f(1-t)
        std::vector<double> lhs, rhs;
        const auto g00 = G(0, 0);
        for (double t : ts) {
            lhs.push_back(fd1(g00, t, step1));
            rhs.push_back((1.0 - t) * f(1.0 - t));
        }
        out.push_back(numeric_result("d/dt G_{0,0} = (1-t) f(1-t)", lhs, rhs, 1e-5));
    }

    {  // D G_{i,0} = 4i G_{i-1,1}
        std::vector<double> lhs, rhs;
        for (int i = 1; i <= 3; ++i) {
            const auto gi0 = G(i, 0);
            for (double t : ts) {
                lhs.push_back(fd1(gi0, t, step1) / t);
                rhs.push_back(4.0 * i * g_moments(i - 1, 1, f, t, quad_order));
            }
        }
        out.push_back(numeric_result("D G_{i,0} = 4i G_{i-1,1}", lhs, rhs, 1e-5));
    }

    {  // D G_{i,j} = 4i G_{i-1,j+1} - 2j G_{i,j-1}
        std::vector<double> lhs, rhs;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 2; ++j) {
                const auto gij = G(i, j);
                for (double t : ts) {
                    lhs.push_back(fd1(gij, t, step1) / t);
                    rhs.push_back(4.0 * i * g_moments(i - 1, j + 1, f, t, quad_order) -
                                  2.0 * j * g_moments(i, j - 1, f, t, quad_order));
                }
            }
        out.push_back(
            numeric_result("D G_{i,j} = 4i G_{i-1,j+1} - 2j G_{i,j-1}", lhs, rhs, 1e-5));
    }

    {  // D G_{0,j} = 2^j (1-t)^{j+1} f(1-t)/t - 2j G_{0,j-1}
        std::vector<double> lhs, rhs;
        for (int j = 1; j <= 3; ++j) {
            const auto g0j = G(0, j);
            for (double t : ts) {
                const double tj = std::pow(1.0 - t, j + 1) * f(1.0 - t) / t;
                lhs.push_back(fd1(g0j, t, step1) / t);
                rhs.push_back(std::pow(2.0, j) * tj -
                              2.0 * j * g_moments(0, j - 1, f, t, quad_order));
            }
        }
        out.push_back(numeric_result("D G_{0,j} = 2^j (1-t)^{j+1} f(1-t)/t - 2j G_{0,j-1}",
                                     lhs, rhs, 1e-5));
    }

    {  // Binomial recombination of repeated D powers, r <= 3, m <= 2.
        std::vector<double> lhs, rhs;
        for (int r = 1; r <= 3; ++r)
            for (int m = 0; m <= 2; ++m) {
                for (double t : ts) {
                    double acc = 0.0;
                    for (int l = 0; 2 * l <= r; ++l) {
                        const Rational c(pow2_big(2 * l) * factorial_big(r) *
                                             factorial_big(m + r),
                                         factorial_big(l) * factorial_big(r - 2 * l) *
                                             factorial_big(m + r - l));
                        acc += static_cast<double>(c) *
                               d_power_fd(G(m + r - l, 0), r - 2 * l, t, stepD);
                    }
                    double fac = std::pow(4.0, r);
                    for (int i = m + 1; i <= m + r; ++i) fac *= i;
                    lhs.push_back(acc);
                    rhs.push_back(fac * g_moments(m, r, f, t, quad_order));
                }
            }
        out.push_back(numeric_result(
            "sum_l c_{r,l} D^{r-2l} G_{m+r-l,0} = 4^r (m+1)..(m+r) G_{m,r}", lhs, rhs, 1e-4));
    }

    {  // D^{2k} h_k reduction to first-column moments, k in {1,2}.
        std::vector<double> lhs, rhs;
        for (int k = 1; k <= 2; ++k) {
            for (double t : ts) {
                lhs.push_back(d_power_fd(G(k, 0), 2 * k, t, stepD));
                double acc = 0.0;
                for (int j = 0; j <= k - 1; ++j) {
                    const Rational c(factorial_big(k - 1 + j),
                                     factorial_big(k - 1 - j) * factorial_big(j));
                    const double sgn = (j % 2 != 0) ? -1.0 : 1.0;
                    acc += sgn * static_cast<double>(c) *
                           d_power_fd(G(0, k - j), k - j, t, stepD);
                }
                double fac = std::pow(4.0, k);
                for (int i = 2; i <= k; ++i) fac *= i;
                rhs.push_back(fac * acc);
            }
        }
        out.push_back(numeric_result(
            "D^{2k} h_k = k! 4^k sum_j (-1)^j binom D^{k-j} G_{0,k-j}", lhs, rhs, 1e-4));
    }

    return out;
}

CheckResult harmonic_gram_check(int q_max) {
    if (q_max < 0) throw std::invalid_argument("harmonic_gram_check: q_max must be >= 0");
    const SphereGrid grid = SphereGrid::build(2 * q_max + 2, 4 * q_max + 4);
    struct Idx {
        int q, s;
    };
    std::vector<Idx> basis;
    for (int q = 0; q <= q_max; ++q)
        for (int s = 1; s <= 2 * q + 1; ++s) basis.push_back({q, s});

    // Tabulate each harmonic on the grid once.
    const std::size_t nt = grid.theta.size();
    const std::size_t np = grid.phi.size();
    std::vector<std::vector<double>> tab(basis.size(), std::vector<double>(nt * np));
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::size_t i = 0; i < nt; ++i)
            for (std::size_t j = 0; j < np; ++j)
                tab[b][i * np + j] = real_sph_harm(basis[b].q, basis[b].s, grid.theta[i],
                                                   grid.phi[j]);

    double worst = 0.0;
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a; b < basis.size(); ++b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < nt; ++i) {
                double ring = 0.0;
                for (std::size_t j = 0; j < np; ++j)
                    ring += tab[a][i * np + j] * tab[b][i * np + j];
                acc += grid.theta_w[i] * ring;
            }
            acc *= grid.phi_w;
            const double expected = (a == b) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(acc - expected));
        }
    CheckResult r;
    r.name = "spherical-harmonic Gram matrix = identity";
    r.tolerance = 1e-8;
    r.error = worst;
    r.pass = (worst <= r.tolerance);
    std::ostringstream d;
    d << basis.size() << " harmonics, q <= " << q_max;
    r.detail = d.str();
    return r;
}

}  // namespace smt
