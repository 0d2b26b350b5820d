#pragma once

#include <algorithm>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace smt {

// Exact arithmetic for the combinatorial coefficient work: factorial ratios
// up to (2K)! overflow 64-bit integers already at modest K.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial_big(long long n) {
    if (n < 0) throw std::invalid_argument("factorial_big: negative argument");
    BigInt r = 1;
    for (long long i = 2; i <= n; ++i) r *= i;
    return r;
}

// Binomial coefficient with the zero convention: C(a,b) = 0 whenever b < 0 or
// b > a (the contour-integration convention of the source identities reduces
// to this for the index ranges that occur here).
inline BigInt binomial_big(long long a, long long b) {
    if (b < 0 || a < 0 || b > a) return 0;
    b = std::min(b, a - b);
    BigInt r = 1;
    for (long long i = 1; i <= b; ++i) {
        r *= (a - b + i);
        r /= i;
    }
    return r;
}

inline BigInt pow2_big(long long e) {
    if (e < 0) throw std::invalid_argument("pow2_big: negative exponent");
    return BigInt(1) << e;
}

}  // namespace smt
