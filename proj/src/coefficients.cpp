#include "smt/coefficients.hpp"

#include <cmath>
#include <stdexcept>

namespace smt {

std::vector<Rational> d_weights(int r) {
    if (r < 1) throw std::invalid_argument("d_weights: r must be >= 1");
    std::vector<Rational> w;
    w.reserve(static_cast<std::size_t>(r));
    for (int j = 1; j <= r; ++j) {
        Rational v(factorial_big(2 * r - 1 - j),
                   pow2_big(r - j) * factorial_big(r - j) * factorial_big(j - 1));
        if ((r - j) % 2 != 0) v = -v;
        w.push_back(v);
    }
    return w;
}

Rational coeff_E(int n, int m, int l) {
    if (l < 1 || m < 0 || n < 0) throw std::invalid_argument("coeff_E: need l >= 1, m,n >= 0");
    const BigInt tail = binomial_big(l - 1 + n - m, n - m);
    if (tail == 0) return Rational(0);  // covers m > n via the zero convention
    const BigInt num = factorial_big(l - 1) * binomial_big(l + 1, n + 2) * tail;
    const BigInt den = pow2_big(n - m) * factorial_big(m);
    return Rational(num, den);
}

Rational coeff_E_sum(int n, int m, int l) {
    if (l < 1 || m < 1 || m > n)
        throw std::invalid_argument("coeff_E_sum: need l >= 1, 1 <= m <= n");
    Rational acc = 0;
    for (int p = m; p <= n; ++p) {
        const BigInt num = factorial_big(l - 1) * factorial_big(2 * p - 1 - m) *
                           binomial_big(l + 1, l - 1 - n) * binomial_big(l - 1 + n - 2 * p, n - p);
        const BigInt den = factorial_big(p) * pow2_big(n - m) * factorial_big(p - m) *
                           factorial_big(m - 1);
        acc += Rational(num, den);
    }
    return acc;
}

std::pair<Rational, Rational> inner_sum_check(int k, int l) {
    if (l < 0 || l > k) throw std::invalid_argument("inner_sum_check: need 0 <= l <= k");
    // The counting factor is C(k-1+j, 2j); C(a,0) = 1 for every integer a
    // (empty product), which covers the degenerate k = 0 term.
    const auto count = [](long long a, long long b) {
        return b == 0 ? BigInt(1) : binomial_big(a, b);
    };
    Rational lhs = 0;
    for (int j = 0; j <= k - l; ++j) {
        lhs += Rational(pow2_big(k - j) * factorial_big(2 * j) * factorial_big(k - j) *
                            count(k - 1 + j, 2 * j),
                        factorial_big(j));
    }
    const Rational rhs(pow2_big(l) * factorial_big(2 * k - l), factorial_big(k - l));
    return {lhs, rhs};
}

CoeffTable ode_coeffs(int K) {
    if (K < 0) throw std::invalid_argument("ode_coeffs: K must be >= 0");
    CoeffTable table;
    table.K = K;
    for (int m = 0; m <= K; ++m) {
        for (int n = m; n <= K; ++n) {
            for (int l = n; l <= K; ++l) {
                const BigInt num = pow2_big(l + m - n) * factorial_big(2 * K - l) *
                                   binomial_big(l + 1, n + 1) * binomial_big(l + n - m, n - m);
                const BigInt den = factorial_big(K - l) * factorial_big(m);
                table.terms[{m, n, l}] = Rational(num, den);
            }
        }
    }
    return table;
}

Rational radial_prefactor(int k) {
    if (k < 0) throw std::invalid_argument("radial_prefactor: k must be >= 0");
    Rational p(factorial_big(k) * pow2_big(2 * k), 1);
    if (k % 2 != 0) p = -p;
    return p;
}

Rational mode_prefactor(int q, int k) {
    if (q < 0 || k < 0) throw std::invalid_argument("mode_prefactor: q,k must be >= 0");
    Rational p(factorial_big(k), pow2_big(q));
    if ((q + k) % 2 != 0) p = -p;
    return p;
}

double ode_coeff_eval(const CoeffTable& table, int m, double t, const Rational& prefactor) {
    if (m < 0 || m > table.K) throw std::invalid_argument("ode_coeff_eval: m out of range");
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("ode_coeff_eval: t must lie in (0,1)");
    const double omt = 1.0 - t;
    double acc = 0.0;
    for (const auto& [key, c] : table.terms) {
        const auto [mm, nn, ll] = key;
        if (mm != m) continue;
        acc += static_cast<double>(c) * std::pow(omt, nn + 1) / std::pow(t, ll + nn - m);
    }
    return static_cast<double>(prefactor) * acc;
}

Rational ode_coeff_eval_exact(const CoeffTable& table, int m, const Rational& t,
                              const Rational& prefactor) {
    if (m < 0 || m > table.K) throw std::invalid_argument("ode_coeff_eval_exact: m out of range");
    const Rational omt = Rational(1) - t;
    Rational acc = 0;
    for (const auto& [key, c] : table.terms) {
        const auto [mm, nn, ll] = key;
        if (mm != m) continue;
        Rational term = c;
        for (int i = 0; i < nn + 1; ++i) term *= omt;
        for (int i = 0; i < ll + nn - m; ++i) term /= t;
        acc += term;
    }
    return prefactor * acc;
}

LaurentPoly& LaurentPoly::add_term(long long e, const Rational& c) {
    auto [it, inserted] = coeff.try_emplace(e, c);
    if (!inserted) it->second += c;
    if (it->second == 0) coeff.erase(it);
    return *this;
}

bool LaurentPoly::operator==(const LaurentPoly& other) const { return coeff == other.coeff; }

Rational LaurentPoly::eval(const Rational& t) const {
    Rational acc = 0;
    for (const auto& [e, c] : coeff) {
        Rational term = c;
        if (e >= 0)
            for (long long i = 0; i < e; ++i) term *= t;
        else
            for (long long i = 0; i < -e; ++i) term /= t;
        acc += term;
    }
    return acc;
}

LaurentPoly laurent_from_binomial(const Rational& c, int p, int e) {
    LaurentPoly out;
    // c * (1-t)^p * t^{-e} = c * sum_i C(p,i) (-1)^i t^{i-e}
    for (int i = 0; i <= p; ++i) {
        Rational term = c * Rational(binomial_big(p, i), 1);
        if (i % 2 != 0) term = -term;
        out.add_term(i - e, term);
    }
    return out;
}

LaurentPoly assembled_coeff(const CoeffTable& table, int m, const Rational& prefactor) {
    if (m < 0 || m > table.K) throw std::invalid_argument("assembled_coeff: m out of range");
    LaurentPoly out;
    for (const auto& [key, c] : table.terms) {
        const auto [mm, nn, ll] = key;
        if (mm != m) continue;
        const LaurentPoly piece = laurent_from_binomial(prefactor * c, nn + 1, ll + nn - m);
        for (const auto& [e, v] : piece.coeff) out.add_term(e, v);
    }
    return out;
}

LaurentPoly d_power_of_kernel(int l, int p) {
    if (l < 0 || p < 0) throw std::invalid_argument("d_power_of_kernel: need l,p >= 0");
    LaurentPoly out;
    for (int s = 0; s <= l; ++s) {
        Rational c(factorial_big(l) * binomial_big(p + 1, l - s) * binomial_big(l + s, s),
                   pow2_big(s));
        if (c == 0) continue;  // vanishing binomial; skips negative (1-t) powers too
        if (l % 2 != 0) c = -c;
        const LaurentPoly piece = laurent_from_binomial(c, p - l + s + 1, l + s + 1);
        for (const auto& [e, v] : piece.coeff) out.add_term(e, v);
    }
    return out;
}

LaurentPoly p0l_from_E(int l) {
    if (l < 1) throw std::invalid_argument("p0l_from_E: need l >= 1");
    LaurentPoly out;
    for (int n = 0; n <= l - 1; ++n) {
        const LaurentPoly piece = laurent_from_binomial(coeff_E(n, 0, l), n + 2, n + l);
        for (const auto& [e, v] : piece.coeff) out.add_term(e, v);
    }
    return out;
}

}  // namespace smt
