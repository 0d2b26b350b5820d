#pragma once

#include "smt/rational.hpp"

namespace smt {

// Surface area of the unit m-sphere: omega_m = 2*pi^((m+1)/2) / Gamma((m+1)/2).
double surface_area(int m);

// Gegenbauer polynomial C_q^lam(x) by the three-term recurrence
// C_0 = 1, C_1 = 2*lam*x, q*C_q = 2x(q+lam-1)C_{q-1} - (q+2lam-2)C_{q-2}.
double gegenbauer(int q, double lam, double x);

// Exact value of C_q^{(n-2)/2}(1) = (n-3+q)! / ((n-3)! q!) for odd n >= 3.
Rational gegenbauer_at_one(int q, int n);

// Real orthonormal spherical harmonics on S^2 (n = 3 only), indexed by degree
// q >= 0 and s in 1..2q+1; orthonormal w.r.t. the unnormalized surface measure.
double real_sph_harm(int q, int s, double theta, double phi);

// Dimension of the degree-q spherical-harmonic space on S^{n-1}:
// (2q+n-2)*(n+q-3)! / (q!*(n-2)!), with harmonic_count(0,n) = 1.
long long harmonic_count(int q, int n);

}  // namespace smt
