#include "smt/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smt {

double surface_area(int m) {
    if (m < 0) throw std::invalid_argument("surface_area: m must be >= 0");
    const double a = 0.5 * (m + 1);
    return 2.0 * std::pow(std::numbers::pi, a) / std::tgamma(a);
}

double gegenbauer(int q, double lam, double x) {
    if (q < 0) throw std::invalid_argument("gegenbauer: q must be >= 0");
    if (!(lam > 0.0)) throw std::invalid_argument("gegenbauer: lam must be > 0");
    if (q == 0) return 1.0;
    double c0 = 1.0;
    double c1 = 2.0 * lam * x;
    for (int m = 2; m <= q; ++m) {
        const double cm = (2.0 * x * (m + lam - 1.0) * c1 - (m + 2.0 * lam - 2.0) * c0) / m;
        c0 = c1;
        c1 = cm;
    }
    return c1;
}

Rational gegenbauer_at_one(int q, int n) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("gegenbauer_at_one: n must be odd >= 3");
    if (q < 0) throw std::invalid_argument("gegenbauer_at_one: q must be >= 0");
    return Rational(factorial_big(n - 3 + q), factorial_big(n - 3) * factorial_big(q));
}

long long harmonic_count(int q, int n) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("harmonic_count: n must be odd >= 3");
    if (q < 0) throw std::invalid_argument("harmonic_count: q must be >= 0");
    if (q == 0) return 1;
    const BigInt num = BigInt(2 * q + n - 2) * factorial_big(n + q - 3);
    const BigInt den = factorial_big(q) * factorial_big(n - 2);
    return static_cast<long long>(num / den);
}

namespace {

// Associated Legendre P_q^m(x) for 0 <= m <= q, unnormalized,
// by the standard (P_mm, P_{m+1,m}, upward-in-degree) recurrences.
double assoc_legendre(int q, int m, double x) {
    double pmm = 1.0;
    if (m > 0) {
        const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
        double fact = 1.0;
        for (int i = 1; i <= m; ++i) {
            pmm *= -fact * s;
            fact += 2.0;
        }
    }
    if (q == m) return pmm;
    double pm1 = x * (2.0 * m + 1.0) * pmm;
    if (q == m + 1) return pm1;
    double p = 0.0;
    for (int l = m + 2; l <= q; ++l) {
        p = ((2.0 * l - 1.0) * x * pm1 - (l + m - 1.0) * pmm) / (l - m);
        pmm = pm1;
        pm1 = p;
    }
    return p;
}

}  // namespace

double real_sph_harm(int q, int s, double theta, double phi) {
    if (q < 0) throw std::invalid_argument("real_sph_harm: q must be >= 0");
    if (s < 1 || s > 2 * q + 1) throw std::invalid_argument("real_sph_harm: s out of range");
    const int m = s - 1 - q;  // -q..q
    const int am = std::abs(m);
    double norm = (2.0 * q + 1.0) / (4.0 * std::numbers::pi);
    for (int i = q - am + 1; i <= q + am; ++i) norm /= i;  // (q-|m|)!/(q+|m|)!
    norm = std::sqrt(norm);
    const double p = assoc_legendre(q, am, std::cos(theta));
    if (m == 0) return norm * p;
    const double sq2 = std::numbers::sqrt2;
    if (m > 0) return sq2 * norm * p * std::cos(m * phi);
    return sq2 * norm * p * std::sin(am * phi);
}

}  // namespace smt
