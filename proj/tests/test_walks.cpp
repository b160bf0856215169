#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sandlab/walks.hpp"

#include <algorithm>

using namespace sandlab;
using namespace sandlab::walks;

TEST_CASE("count_end basics") {
    CHECK(count_end(4, 2) == 4);
    CHECK(count_end(3, 0) == 0);
    CHECK(count_end(0, 0) == 1);
    CHECK(count_end(6, -2) == count_end(6, 2));
    CHECK(count_end(5, 7) == 0);
    CHECK_THROWS_AS(count_end(-1, 0), std::invalid_argument);
}

TEST_CASE("count_end_max basics") {
    CHECK(count_end_max(4, 2, 2) == 3);
    CHECK(count_end_max(2, 0, 0) == 1);  // (-1, 0) is the only such walk
    CHECK(count_end_max(5, 2, 3) == 0);  // parity
    CHECK(count_end_max(0, 0, 0) == 1);
    CHECK_THROWS_AS(count_end_max(4, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(count_end_max(4, -5, -1), std::invalid_argument);
}

TEST_CASE("counts agree with exhaustive enumeration") {
    for (int t = 0; t <= 10; ++t) {
        for (long k = -t; k <= t; ++k) {
            const BigInt brute = brute_force_count(
                t, [&](std::span<const int> path) { return path.back() == k; });
            CHECK(brute == count_end(t, k));
        }
        for (long m = 0; m <= t; ++m) {
            for (long k = -t; k <= m; ++k) {
                const BigInt brute = brute_force_count(t, [&](std::span<const int> path) {
                    const int mx = *std::max_element(path.begin(), path.end());
                    return path.back() == k && mx == m;
                });
                CHECK(brute == count_end_max(t, k, m));
            }
        }
    }
}

TEST_CASE("reflection identity for max >= m") {
    for (int t = 0; t <= 10; ++t) {
        for (long m = 0; m <= t; ++m) {
            for (long k = -t; k <= m; ++k) {
                const BigInt brute = brute_force_count(t, [&](std::span<const int> path) {
                    const int mx = *std::max_element(path.begin(), path.end());
                    return path.back() == k && mx >= m;
                });
                CHECK(brute == count_end(t, 2 * m - k));
            }
        }
    }
}

TEST_CASE("max position splits by parity") {
    for (int t = 1; t <= 12; ++t) {
        for (long m = 0; m <= t; ++m) {
            const BigInt brute = brute_force_count(t, [&](std::span<const int> path) {
                return *std::max_element(path.begin(), path.end()) == m;
            });
            CHECK(brute == count_end(t, m) + count_end(t, m + 1));
        }
    }
}

TEST_CASE("corridor probability examples") {
    CHECK(prob_corridor({1, 2, 1}) == Rational(1, 2));
    CHECK(prob_corridor({1, 2, 3}) == Rational(1, 8));  // 1 -> 2 -> 1 -> 2
    CHECK(prob_corridor({2, 4, 5}).is_zero());          // parity
    CHECK(prob_corridor({3, 3, 0}) == 1);
    CHECK_THROWS_AS(prob_corridor({0, 4, 2}), std::invalid_argument);
    CHECK_THROWS_AS(prob_corridor({5, 4, 2}), std::invalid_argument);
    CHECK_THROWS_AS(prob_corridor({1, 2, -1}), std::invalid_argument);
}

TEST_CASE("corridor counts match enumeration") {
    for (int n : {2, 3, 5}) {
        for (int i = 1; i <= n; ++i) {
            const auto sweep = corridor_count_sweep(i, n, 14);
            for (int t = 0; t <= 14; ++t) {
                const BigInt brute = brute_force_count(t, [&](std::span<const int> path) {
                    if (path.back() + i != n) return false;
                    for (int p : path)
                        if (p + i < 1 || p + i > n) return false;
                    return true;
                });
                CHECK(brute == sweep[static_cast<std::size_t>(t)]);
                CHECK(sweep[static_cast<std::size_t>(t)] ==
                      corridor_count({i, n, t}));
            }
        }
    }
}

TEST_CASE("corridor mass never exceeds one") {
    const auto sweep = corridor_count_sweep(2, 6, 60);
    for (long t = 0; t <= 60; ++t)
        CHECK(Rational(sweep[static_cast<std::size_t>(t)], pow2(t)) <= 1);
}

TEST_CASE("brute force cap") {
    CHECK_THROWS_AS(brute_force_count(23, [](std::span<const int>) { return true; }),
                    std::invalid_argument);
}

TEST_CASE("negative binomial partial sums") {
    CHECK(neg_binom_sum(0, 2, 60) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(neg_binom_sum(5, 2, 400) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(neg_binom_sum(3, 3, 600) == doctest::Approx(3.0).epsilon(1e-7));
    CHECK(neg_binom_sum(0, 4, 800) == doctest::Approx(4.0).epsilon(1e-7));
    CHECK_THROWS_AS(neg_binom_sum(0, 1, 10), std::invalid_argument);
    CHECK_THROWS_AS(neg_binom_sum(0, 2, 0), std::invalid_argument);
}

TEST_CASE("corner potential series") {
    CHECK(corner_potential_series(8, 1, 1, 0).is_zero());
    const Rational partial = corner_potential_series(8, 1, 1, 64);
    const Rational more = corner_potential_series(8, 1, 1, 128);
    CHECK(partial > 0);
    CHECK(more >= partial);  // partial sums of nonnegative terms grow
    CHECK_THROWS_AS(corner_potential_series(8, 7, 1, 16), std::invalid_argument);
}

TEST_CASE("lemma ids round trip") {
    CHECK(lemma_name(WalkLemma::probLeftRight) == "probLeftRight");
    CHECK(lemma_name(WalkLemma::MaxIsAbovenSquared) == "MaxIsAbovenSquared");
}

TEST_CASE("walk lemma verifier small grids all pass") {
    ParamGrid small;
    small.n = {16};
    small.c = {5, 10};
    small.i = {1, 4, 8};
    for (WalkLemma id : {WalkLemma::probLeft, WalkLemma::probRight, WalkLemma::probLeftRight,
                         WalkLemma::leftWorse}) {
        const auto rows = verify_walk_lemma(id, small);
        CHECK(!rows.empty());
        for (const auto& r : rows) CHECK(r.pass);
    }

    ParamGrid upper;
    upper.n = {20};
    for (WalkLemma id : {WalkLemma::upperProbLeftRight, WalkLemma::upperBoundMaxSum,
                         WalkLemma::upperBoundSum}) {
        for (const auto& r : verify_walk_lemma(id, upper)) CHECK(r.pass);
    }

    ParamGrid rest;
    rest.n = {12};
    rest.t = {12, 25, 60};
    for (WalkLemma id : {WalkLemma::divideWalkinHalf, WalkLemma::sumBoundForMaxMinEnd,
                         WalkLemma::simpleMaxforProductProb}) {
        for (const auto& r : verify_walk_lemma(id, rest)) CHECK(r.pass);
    }

    ParamGrid stirling_small;
    stirling_small.t = {2000};
    for (const auto& r : verify_walk_lemma(WalkLemma::stirling, stirling_small)) CHECK(r.pass);

    ParamGrid chern;
    chern.n = {10, 120};
    for (const auto& r : verify_walk_lemma(WalkLemma::chernoff, chern)) CHECK(r.pass);

    ParamGrid odd;
    odd.n = {21};
    for (const auto& r : verify_walk_lemma(WalkLemma::MaxIsAbovenSquared, odd)) CHECK(r.pass);

    for (const auto& r : verify_walk_lemma(WalkLemma::endn, ParamGrid{})) CHECK(r.pass);
    for (const auto& r : verify_walk_lemma(WalkLemma::numWalks, ParamGrid{})) CHECK(r.pass);
    for (const auto& r : verify_walk_lemma(WalkLemma::binSumInf, ParamGrid{})) CHECK(r.pass);
    for (const auto& r : verify_walk_lemma(WalkLemma::binBound, ParamGrid{})) CHECK(r.pass);
}

TEST_CASE("hypothesis violations are rejected by name") {
    ParamGrid bad_c;
    bad_c.n = {16};
    bad_c.c = {4};
    CHECK_THROWS_WITH_AS(verify_walk_lemma(WalkLemma::probLeftRight, bad_c).front(),
                         "probLeftRight requires c > 4", std::invalid_argument);

    ParamGrid bad_n;
    bad_n.n = {10};
    CHECK_THROWS_WITH_AS(verify_walk_lemma(WalkLemma::upperProbLeftRight, bad_n).front(),
                         "upperProbLeftRight requires n >= 20", std::invalid_argument);

    ParamGrid bad_i;
    bad_i.n = {16};
    bad_i.i = {12};
    CHECK_THROWS_WITH_AS(verify_walk_lemma(WalkLemma::probLeft, bad_i).front(),
                         "probLeft requires 1 <= i <= ceil(n/2)", std::invalid_argument);
}
