#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kcnas/scoring.hpp"

using kcnas::jumping_factor;
using kcnas::k_completeness;
using kcnas::ScoreParams;

TEST_CASE("jumping factor is the plain quotient") {
    CHECK(jumping_factor(64, 11) == doctest::Approx(5.818181818181818).epsilon(1e-12));
    CHECK(jumping_factor(11, 11) == 1.0);
    CHECK(jumping_factor(1, 1) == 1.0);
    CHECK_THROWS_AS((void)jumping_factor(64, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)jumping_factor(0, 11), std::invalid_argument);
}

TEST_CASE("k-completeness reproduces the published table values") {
    const ScoreParams params{0.5, 11};
    CHECK(std::abs(k_completeness(64, 2, params) - 3.1591) <= 1e-4);
    CHECK(std::abs(k_completeness(56, 2, params) - 2.7955) <= 1e-4);
    CHECK(std::abs(k_completeness(64, 16, params) - 2.9403) <= 1e-4);
    CHECK(std::abs(k_completeness(40, 8, params) - 1.8807) <= 1e-4);
    // single-hidden-layer rows imply df = 1
    CHECK(std::abs(k_completeness(16, 1, params) - 1.2273) <= 1e-4);
    CHECK(std::abs(k_completeness(48, 1, params) - 2.6818) <= 1e-4);
}

TEST_CASE("score is monotone in both axes") {
    const ScoreParams params{0.5, 11};
    for (int df : {1, 2, 4, 8, 16}) {
        double previous = 0.0;
        for (int ihls = 1; ihls <= 64; ++ihls) {
            const double score = k_completeness(ihls, df, params);
            CHECK(score > previous);
            previous = score;
        }
    }
    for (int ihls : {1, 7, 32, 64}) {
        double previous = 1e300;
        for (int df : {1, 2, 4, 8, 16, 32, 64}) {
            const double score = k_completeness(ihls, df, params);
            CHECK(score < previous);
            previous = score;
        }
    }
}

TEST_CASE("alpha extremes reduce to the pure terms") {
    for (int ihls : {1, 5, 64})
        for (int df : {1, 2, 8}) {
            CHECK(k_completeness(ihls, df, {1.0, 11}) == jumping_factor(ihls, 11));
            CHECK(k_completeness(ihls, df, {0.0, 11}) == 1.0 / df);
        }
}

TEST_CASE("score is positive and rejects bad inputs") {
    for (int ihls = 1; ihls <= 32; ++ihls)
        for (int df : {1, 2, 4}) CHECK(k_completeness(ihls, df, {0.5, 11}) > 0.0);
    CHECK_THROWS_AS((void)k_completeness(4, 0, {0.5, 11}), std::invalid_argument);
    CHECK_THROWS_AS((void)k_completeness(4, 2, {0.5, 0}), std::invalid_argument);
    CHECK_THROWS_AS((void)k_completeness(4, 2, {1.5, 11}), std::invalid_argument);
}

TEST_CASE("reporting rounds to table precision") {
    CHECK(kcnas::round_to(3.159090909, 4) == doctest::Approx(3.1591).epsilon(1e-12));
    CHECK(kcnas::round_to(1.88068181, 4) == doctest::Approx(1.8807).epsilon(1e-12));
}
