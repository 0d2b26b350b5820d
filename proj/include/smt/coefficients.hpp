#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "smt/rational.hpp"

namespace smt {

// Weights of the expansion D^r f(t) = sum_{j=1..r} w_{r,j} f^(j)(t) / t^{2r-j}
// for the operator D = t^{-1} d/dt:
// w_{r,j} = (-1)^{r-j} (2r-1-j)! / (2^{r-j} (r-j)! (j-1)!).
// Returned indexed by j = 1..r (element [j-1]).
std::vector<Rational> d_weights(int r);

// Closed-form combinatorial coefficient
// E_{n,m,l} = (l-1)!/(2^{n-m} m!) * C(l+1, n+2) * C(l-1+n-m, n-m),
// with the zero binomial convention (which also makes it vanish for m > n).
// Requires l >= 1, m >= 0, n >= 0.
Rational coeff_E(int n, int m, int l);

// The same coefficient from its defining sum (valid for m >= 1):
// sum_{p=m..n} (l-1)!(2p-1-m)! / (p! 2^{n-m} (p-m)! (m-1)!)
//              * C(l+1, l-1-n) * C(l-1+n-2p, n-p).
// Equality with coeff_E is the Abel-Aigner identity check.
Rational coeff_E_sum(int n, int m, int l);

// Both sides of the inner-sum identity
//   sum_{j=0..k-l} 2^{k-j} (2j)! (k-j)!/j! * C(k-1+j, k-1-j)
//     = 2^l (2k-l)! / (k-l)!      (0 <= l <= k),
// evaluated exactly with the zero binomial convention.
std::pair<Rational, Rational> inner_sum_check(int k, int l);

// Exact coefficients of the order-K inversion ODE. Entry (m,n,l) holds
// 2^{l+m-n} (2K-l)!/((K-l)! m!) * C(l+1, n+1) * C(l+n-m, n-m)
// for 0 <= m <= n <= l <= K; the assembled coefficient of f^(m)(1-t) is
//   a_m(t) = prefactor * sum_{n,l} entry(m,n,l) * (1-t)^{n+1} / t^{l+n-m}.
struct CoeffTable {
    int K = 0;
    std::map<std::tuple<int, int, int>, Rational> terms;
};

CoeffTable ode_coeffs(int K);

// Prefactors: radial inversion of order K = k uses (-1)^k k! 4^k; the
// (q,s)-mode inversion of order K = q+k uses (-1)^{q+k} k! / 2^q.
Rational radial_prefactor(int k);
Rational mode_prefactor(int q, int k);

// a_m(t) in double precision.
double ode_coeff_eval(const CoeffTable& table, int m, double t, const Rational& prefactor);

// a_m(t) in exact arithmetic at rational t.
Rational ode_coeff_eval_exact(const CoeffTable& table, int m, const Rational& t,
                              const Rational& prefactor);

// Exact Laurent polynomial in t (map exponent -> coefficient); the assembled
// a_m has negative exponents down to -(2K-m).
struct LaurentPoly {
    std::map<long long, Rational> coeff;

    LaurentPoly& add_term(long long e, const Rational& c);
    bool operator==(const LaurentPoly& other) const;
    Rational eval(const Rational& t) const;
};

// a_m expanded into powers of t (exact), prefactor included.
LaurentPoly assembled_coeff(const CoeffTable& table, int m, const Rational& prefactor);

// Helper for building reference Laurent polynomials: c * (1-t)^p / t^e.
LaurentPoly laurent_from_binomial(const Rational& c, int p, int e);

// Exact expansion of D^l { (1-t)^{p+1} / t } as a function of t:
//   (-1)^l l! sum_{s=0..l} 2^{-s} C(p+1, l-s) C(l+s, s) (1-t)^{p-l+s+1} / t^{l+s+1}.
LaurentPoly d_power_of_kernel(int l, int p);

// P_{0,l} assembled from coeff_E: sum_{n=0..l-1} E_{n,0,l} (1-t)^{n+2}/t^{n+l}.
LaurentPoly p0l_from_E(int l);

}  // namespace smt
