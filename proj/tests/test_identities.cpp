#include <doctest.h>

#include "smt/identities.hpp"
#include "smt/phantom.hpp"

TEST_CASE("exact combinatorial identity suite passes with zero tolerance") {
    const auto results = smt::exact_identity_suite();
    REQUIRE(!results.empty());
    for (const auto& r : results) {
        INFO(r.name, " ", r.detail);
        CHECK(r.exact);
        CHECK(r.pass);
    }
}

TEST_CASE("moment identity suite passes on the reference gaussian") {
    const auto f = smt::make_gaussian(0.5, 0.05, 0.5);
    const auto results = smt::moment_identity_suite(f);
    REQUIRE(results.size() >= 6);
    for (const auto& r : results) {
        INFO(r.name, ": error ", r.error, " tolerance ", r.tolerance);
        CHECK(r.pass);
        CHECK(r.error <= r.tolerance);
    }
}

TEST_CASE("harmonic gram matrix is the identity through degree eight") {
    const auto r = smt::harmonic_gram_check(8);
    INFO(r.name, ": error ", r.error);
    CHECK(r.pass);
    CHECK(r.error <= 1e-8);
}
