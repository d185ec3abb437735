#include "kthstop/policy_eval.hpp"

#include "kthstop/closed_form.hpp"
#include "kthstop/dp.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace kthstop;

TEST_CASE("stop-at-n wins with probability 1/n", "[policy_eval]") {
    CHECK(evaluate(10, Goal::single(4), stop_only_at_n(10)) == Rational(1, 10));
    CHECK(evaluate(7, Goal::single(1), stop_only_at_n(7)) == Rational(1, 7));
    CHECK(evaluate(6, Goal::rank_set({2, 5}), stop_only_at_n(6)) == Rational(2, 6));
}

TEST_CASE("threshold rules attain the optimal values", "[policy_eval][oracle]") {
    CHECK(evaluate(13, Goal::single(3), tau3_policy(13)) == p_value(13, 3));
    for (int n = 3; n <= 300; ++n) {
        CAPTURE(n);
        REQUIRE(evaluate(n, Goal::single(1), tau1_policy(n)) == p1(n));
        REQUIRE(evaluate(n, Goal::single(2), tau2_policy(n)) == p2(n));
        REQUIRE(evaluate(n, Goal::single(3), tau3_policy(n)) == p3(n));
    }
}

TEST_CASE("the tie-variant second-best rule is also optimal", "[policy_eval]") {
    const int n = 6;
    const int r = rprime_threshold(n);
    StagePolicy variant = tau2_policy(n);
    variant.set(r - 1, 1, true);  // additionally stop at stage r'-1 on a relative best
    CHECK(evaluate(n, Goal::single(2), tau2_policy(n)) == p2(n));
    CHECK(evaluate(n, Goal::single(2), variant) == p2(n));
}

TEST_CASE("conditional table: terminal rows and the tower property", "[policy_eval][property]") {
    SplitMix64 rng(777);
    struct Case {
        int n;
        Goal goal;
    };
    const Case cases[] = {{12, Goal::single(3)}, {9, Goal::rank_set({1, 4})}};
    for (const auto& [n, goal] : cases) {
        for (int rep = 0; rep < 5; ++rep) {
            const StagePolicy pol = testing::random_policy(n, rng);
            const auto cv = conditional_table(n, goal, pol);

            for (int x = 1; x <= n; ++x)
                REQUIRE(cv.at(n, x) == (goal.contains(x) ? Rational(1) : Rational(0)));

            for (int j = 1; j < n; ++j) {
                Rational mean = 0;
                for (int i = 1; i <= j + 1; ++i) mean += cv.at(j + 1, i);
                mean /= j + 1;
                for (int x = 1; x <= j; ++x) {
                    CAPTURE(n, j, x);
                    if (pol.accepts(j, x))
                        REQUIRE(cv.at(j, x) == reward(n, j, x, goal));
                    else
                        REQUIRE(cv.at(j, x) == mean);
                }
            }
            // the backward table and the forward survival product agree
            REQUIRE(cv.at(1, 1) == evaluate(n, goal, pol));
        }
    }
}

TEST_CASE("conditional values under the two-threshold rule", "[policy_eval]") {
    const Goal third = Goal::single(3);
    const auto cv = conditional_table(40, third, tau3_policy(40));
    for (int j = 1; j <= 40; ++j)
        for (int x = 1; x <= j; ++x) {
            CAPTURE(j, x);
            REQUIRE(cv.at(j, x) == h_value(40, j, x));
        }
    CHECK(conditional_value(13, third, tau3_policy(13), 8, 1) == h_value(13, 8, 1));
}

TEST_CASE("no policy beats the solver", "[policy_eval][property]") {
    SplitMix64 rng(4242);
    struct Case {
        int n;
        Goal goal;
    };
    const Case cases[] = {{6, Goal::single(1)},
                          {13, Goal::single(3)},
                          {30, Goal::single(4)},
                          {10, Goal::rank_set({1, 2, 3})}};
    for (const auto& [n, goal] : cases) {
        const Rational best = p_value(n, goal);
        for (int rep = 0; rep < 200; ++rep) {
            const StagePolicy pol = testing::random_policy(n, rng);
            CAPTURE(n, goal.describe(), rep);
            REQUIRE(evaluate(n, goal, pol) <= best);
        }
    }
}

TEST_CASE("evaluate rejects mismatched policies", "[policy_eval]") {
    CHECK_THROWS_AS(evaluate(5, Goal::single(1), stop_only_at_n(6)), std::invalid_argument);
    CHECK_THROWS_AS(conditional_table(5, Goal::single(1), stop_only_at_n(4)),
                    std::invalid_argument);
}
