#pragma once

#include <string>
#include <vector>

#include "smt/phantom.hpp"

namespace smt {

// Outcome of one structural identity check.
struct CheckResult {
    std::string name;
    bool exact = false;  // exact big-rational arithmetic (error / tolerance 0)
    bool pass = false;
    double error = 0.0;      // measured relative discrepancy for numeric checks
    double tolerance = 0.0;  // pass bound for numeric checks
    std::string detail;
};

// Exact combinatorial checks (arbitrary-precision arithmetic, zero tolerance):
//  - E closed form vs its defining sum, all 1 <= m <= n <= l <= lmax;
//  - the vanishing pattern E_{l,m,l} = E_{m-1,m,l} = E_{l,l,l} = E_{l-1,l,l} = 0
//    and the unit value E_{1,1,2} = 1;
//  - the inner-sum collapse to 2^l (2k-l)!/(k-l)! for 0 <= l <= k <= kmax;
//  - leading ODE coefficient a_K = prefactor * 2^K (1-t)^{K+1}/t^K, K <= 6;
//  - P_{0,l} assembled from the E table vs (-1)^{l-1} D^{l-1}{(1-t)^{l+1}/t}
//    expanded through the operator weights, l <= 6.
std::vector<CheckResult> exact_identity_suite(int lmax = 8, int kmax = 8);

// Numeric moment-identity checks on an analytic phantom; t-derivatives of the
// quadrature values are taken by centered finite differences (step 1e-4 for
// first derivatives; 9-point stencils at step 1e-3 for the higher D powers).
// Errors are relative to the identity's own scale over the sampled t range:
//  - d/dt G_{0,0} = (1-t) f(1-t);
//  - D G_{i,0} = 4i G_{i-1,1}, i <= 3;
//  - D G_{i,j} = 4i G_{i-1,j+1} - 2j G_{i,j-1}, i <= 3, j <= 2;
//  - D G_{0,j} = 2^j (1-t)^{j+1} f(1-t)/t - 2j G_{0,j-1}, j <= 3;
//  - sum_l 2^{2l} r!/(l!(r-2l)!) (m+r)!/(m+r-l)! D^{r-2l} G_{m+r-l,0}
//      = 4^r (m+1)...(m+r) G_{m,r}, r <= 3, m <= 2;
//  - D^{2k} h_k = k! 4^k sum_j (-1)^j (k-1+j)!/((k-1-j)! j!) D^{k-j} G_{0,k-j},
//      k in {1,2}.
std::vector<CheckResult> moment_identity_suite(const RadialPhantom& f, int quad_order = 96);

// Orthonormality of the real spherical harmonics under the product sphere
// quadrature: max |Gram - I| over all pairs with degrees <= q_max
// (tolerance 1e-8).
CheckResult harmonic_gram_check(int q_max);

}  // namespace smt
