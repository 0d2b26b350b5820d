#include <stdexcept>

#include <doctest.h>

#include "smt/coefficients.hpp"
#include "smt/rational.hpp"

using smt::Rational;

TEST_CASE("exact binomial with the zero convention") {
    CHECK(smt::binomial_big(5, 2) == smt::BigInt(10));
    CHECK(smt::binomial_big(5, 0) == smt::BigInt(1));
    CHECK(smt::binomial_big(5, 6) == smt::BigInt(0));
    CHECK(smt::binomial_big(5, -1) == smt::BigInt(0));
    CHECK(smt::binomial_big(-2, 1) == smt::BigInt(0));
}

TEST_CASE("operator weights w_{r,j}") {
    const auto w1 = smt::d_weights(1);
    REQUIRE(w1.size() == 1);
    CHECK(w1[0] == Rational(1));

    const auto w2 = smt::d_weights(2);
    REQUIRE(w2.size() == 2);
    CHECK(w2[0] == Rational(-1));  // j=1
    CHECK(w2[1] == Rational(1));   // j=2

    const auto w3 = smt::d_weights(3);
    REQUIRE(w3.size() == 3);
    CHECK(w3[0] == Rational(3));  // j=1: 4!/(2^2 2! 0!) = 3
    CHECK(w3[1] == Rational(-3));
    CHECK(w3[2] == Rational(1));
    CHECK_THROWS_AS((void)smt::d_weights(0), std::invalid_argument);
}

TEST_CASE("combinatorial coefficient E: unit value and vanishing pattern") {
    CHECK(smt::coeff_E(1, 1, 2) == Rational(1));
    for (int l = 1; l <= 8; ++l) {
        for (int m = 0; m <= l; ++m) CHECK(smt::coeff_E(l, m, l) == Rational(0));
        for (int m = 1; m <= l; ++m) CHECK(smt::coeff_E(m - 1, m, l) == Rational(0));
        CHECK(smt::coeff_E(l, l, l) == Rational(0));
        CHECK(smt::coeff_E(l - 1, l, l) == Rational(0));
    }
}

TEST_CASE("closed-form E equals its defining sum") {
    for (int l = 1; l <= 8; ++l)
        for (int n = 1; n <= l; ++n)
            for (int m = 1; m <= n; ++m) CHECK(smt::coeff_E(n, m, l) == smt::coeff_E_sum(n, m, l));
}

TEST_CASE("inner-sum identity collapses exactly") {
    auto [l10, r10] = smt::inner_sum_check(1, 0);
    CHECK(l10 == Rational(2));
    CHECK(r10 == Rational(2));
    auto [l20, r20] = smt::inner_sum_check(2, 0);
    CHECK(l20 == Rational(12));
    CHECK(r20 == Rational(12));
    auto [l22, r22] = smt::inner_sum_check(2, 2);
    CHECK(l22 == Rational(8));
    CHECK(r22 == Rational(8));
    for (int k = 0; k <= 8; ++k)
        for (int l = 0; l <= k; ++l) {
            auto [lhs, rhs] = smt::inner_sum_check(k, l);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("order-0 coefficient table is the single unit entry") {
    const auto table = smt::ode_coeffs(0);
    CHECK(table.K == 0);
    REQUIRE(table.terms.size() == 1);
    CHECK(table.terms.at({0, 0, 0}) == Rational(1));
    CHECK(smt::radial_prefactor(0) == Rational(1));
}

TEST_CASE("order-1 coefficients before and after the radial prefactor") {
    const auto table = smt::ode_coeffs(1);
    // Raw: coefficient of f' is 2(1-t)^2/t; of f is 2(1-t) + 4(1-t)/t + 2(1-t)^2/t^2.
    CHECK(smt::assembled_coeff(table, 1, Rational(1)) ==
          smt::laurent_from_binomial(Rational(2), 2, 1));
    smt::LaurentPoly raw0 = smt::laurent_from_binomial(Rational(2), 1, 0);
    for (const auto& [e, c] : smt::laurent_from_binomial(Rational(4), 1, 1).coeff)
        raw0.add_term(e, c);
    for (const auto& [e, c] : smt::laurent_from_binomial(Rational(2), 2, 2).coeff)
        raw0.add_term(e, c);
    CHECK(smt::assembled_coeff(table, 0, Rational(1)) == raw0);

    // With prefactor (-1)^1 1! 4^1 = -4: -8(1-t)^2/t and -8(1-t)(1+t+t^2)/t^2.
    const Rational pref = smt::radial_prefactor(1);
    CHECK(pref == Rational(-4));
    CHECK(smt::assembled_coeff(table, 1, pref) ==
          smt::laurent_from_binomial(Rational(-8), 2, 1));
    // (1-t)(1+t+t^2) = 1 - t^3, so a0 = -8/t^2 + 8t.
    smt::LaurentPoly a0;
    a0.add_term(-2, Rational(-8));
    a0.add_term(1, Rational(8));
    CHECK(smt::assembled_coeff(table, 0, pref) == a0);
}

TEST_CASE("order-2 coefficients reproduce the displayed seventh-dimension equation") {
    const auto table = smt::ode_coeffs(2);
    const Rational pref = smt::radial_prefactor(2);
    CHECK(pref == Rational(32));
    CHECK(smt::assembled_coeff(table, 2, pref) ==
          smt::laurent_from_binomial(Rational(128), 3, 2));
    // 384 (1-t)^2 (1+t+t^2)/t^3 = 384 (1-t)(1-t^3)/t^3.
    smt::LaurentPoly a1;
    a1.add_term(-3, Rational(384));
    a1.add_term(-2, Rational(-384));
    a1.add_term(0, Rational(-384));
    a1.add_term(1, Rational(384));
    CHECK(smt::assembled_coeff(table, 1, pref) == a1);
    // 384 (1-t^5)/t^4.
    smt::LaurentPoly a0;
    a0.add_term(-4, Rational(384));
    a0.add_term(1, Rational(-384));
    CHECK(smt::assembled_coeff(table, 0, pref) == a0);
}

TEST_CASE("pointwise coefficient evaluation at t = 1/2") {
    const auto table = smt::ode_coeffs(1);
    const Rational pref = smt::radial_prefactor(1);
    CHECK(smt::ode_coeff_eval(table, 1, 0.5, pref) == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(smt::ode_coeff_eval(table, 0, 0.5, pref) == doctest::Approx(-28.0).epsilon(1e-14));
    const Rational half(1, 2);
    CHECK(smt::ode_coeff_eval_exact(table, 1, half, pref) == Rational(-4));
    CHECK(smt::ode_coeff_eval_exact(table, 0, half, pref) == Rational(-28));
}

TEST_CASE("leading coefficient law for all orders up to six") {
    for (int K = 0; K <= 6; ++K) {
        const auto table = smt::ode_coeffs(K);
        const smt::LaurentPoly want =
            smt::laurent_from_binomial(Rational(smt::pow2_big(K)), K + 1, K);
        CHECK(smt::assembled_coeff(table, K, Rational(1)) == want);
    }
}

TEST_CASE("mode prefactor closed form") {
    CHECK(smt::mode_prefactor(0, 0) == Rational(1));
    CHECK(smt::mode_prefactor(1, 0) == Rational(-1, 2));
    CHECK(smt::mode_prefactor(0, 1) == Rational(-1));
    CHECK(smt::mode_prefactor(2, 1) == Rational(-1, 4));
}

TEST_CASE("kernel-power expansion matches the coefficient assembly at sample points") {
    // P_{0,l} from the E table against (-1)^{l-1} D^{l-1}{(1-t)^{l+1}/t}.
    for (int l = 1; l <= 6; ++l) {
        smt::LaurentPoly lhs = smt::p0l_from_E(l);
        smt::LaurentPoly rhs = smt::d_power_of_kernel(l - 1, l);
        const Rational sign = (l % 2 == 0) ? Rational(-1) : Rational(1);
        for (int i = 1; i <= 20; ++i) {
            const Rational t(i, 21);
            CHECK(lhs.eval(t) == sign * rhs.eval(t));
        }
    }
}
