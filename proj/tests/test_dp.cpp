#include "kthstop/dp.hpp"

#include "kthstop/closed_form.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace kthstop;

TEST_CASE("solved values match known instances", "[dp]") {
    CHECK(solve(3, Goal::single(1)).table.value == Rational(1, 2));
    CHECK(solve(5, Goal::single(2)).table.value == Rational(3, 10));
    CHECK(solve(3, Goal::single(3)).table.value == Rational(1, 2));
    CHECK(p_value(4, 1) == Rational(11, 24));
    CHECK(p_value(13, 3) == Rational(13457, 51480));
    CHECK(p_value(13, 3) == h_value(13, 1, 1));
    CHECK(p_value(5, Goal::rank_set({1, 2})) == Rational(7, 10));
}

TEST_CASE("any stop wins when the goal is the full rank set", "[dp]") {
    for (const int n : {1, 2, 6, 11}) {
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i + 1;
        CHECK(p_value(n, Goal::rank_set(all)) == 1);
    }
}

TEST_CASE("size-2 goals at n=5 peak at the extreme runs", "[dp]") {
    const Rational target = p_value(5, Goal::rank_set({1, 2}));
    Rational best = 0;
    for (int i = 1; i <= 5; ++i)
        for (int j = i + 1; j <= 5; ++j) best = std::max(best, p_value(5, Goal::rank_set({i, j})));
    CHECK(best == target);
    CHECK(p_value(5, Goal::rank_set({4, 5})) == target);
}

TEST_CASE("table satisfies the recursion exactly", "[dp][property]") {
    struct Case {
        int n;
        Goal goal;
    };
    const Case cases[] = {{17, Goal::single(3)}, {12, Goal::single(5)}, {9, Goal::rank_set({2, 5})}};
    for (const auto& [n, goal] : cases) {
        const SolveResult sr = solve(n, goal);
        const ValueTable& t = sr.table;

        for (int x = 1; x <= n; ++x)
            REQUIRE(t.v(n, x) == reward(n, n, x, goal));
        for (int j = 1; j < n; ++j) {
            Rational mean = 0;
            for (int x = 1; x <= j + 1; ++x) mean += t.v(j + 1, x);
            mean /= j + 1;
            REQUIRE(t.continuation(j) == mean);
            for (int x = 1; x <= j; ++x) {
                const Rational y = reward(n, j, x, goal);
                REQUIRE(t.v(j, x) == std::max(y, t.continuation(j)));
                REQUIRE(sr.policy.accepts(j, x) == (y >= t.continuation(j)));
            }
        }
        REQUIRE(t.value == t.v(1, 1));
    }
}

TEST_CASE("exhaustive policy search cannot beat the solver", "[dp][oracle]") {
    for (int n = 1; n <= 5; ++n) {
        const auto table = testing::enumerate_permutations(n);
        for (int k = 1; k <= n; ++k) {
            CAPTURE(n, k);
            REQUIRE(testing::exhaustive_policy_value(table, k) == p_value(n, k));
        }
    }
}

TEST_CASE("optimal stop sets for thirteen candidates", "[dp]") {
    const SolveResult sr = solve(13, Goal::single(3));
    for (int j = 1; j <= 6; ++j)
        for (int x = 1; x <= j; ++x) CHECK_FALSE(sr.policy.accepts(j, x));
    CHECK(sr.policy.accept_list(7) == std::vector<int>{2});
    CHECK(sr.policy.accept_list(8) == std::vector<int>{2});
    for (int j = 9; j <= 12; ++j) CHECK(sr.policy.accept_list(j) == std::vector<int>{2, 3});
    CHECK(sr.policy.accept_count(13) == 13);
}

TEST_CASE("value symmetry under rank reversal", "[dp][property]") {
    for (int n = 1; n <= 30; ++n)
        for (int k = 1; k <= n; ++k) {
            CAPTURE(n, k);
            REQUIRE(p_value(n, k) == p_value(n, n - k + 1));
        }
}

TEST_CASE("degenerate instances", "[dp]") {
    CHECK(solve(1, Goal::single(1)).table.value == 1);
    CHECK(p_value(2, 1) == Rational(1, 2));
    CHECK(p_value(2, 2) == Rational(1, 2));
    const SolveResult sr = solve(1, Goal::single(1));
    CHECK(sr.policy.accept_count(1) == 1);
}

TEST_CASE("solve rejects invalid goals", "[dp]") {
    CHECK_THROWS_AS(solve(5, Goal::single(6)), std::domain_error);
    CHECK_THROWS_AS(solve(0, Goal::single(1)), std::invalid_argument);
    CHECK_THROWS_AS(solve(4, Goal::rank_set({2, 9})), std::domain_error);
}
