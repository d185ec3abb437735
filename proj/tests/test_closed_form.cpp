#include "kthstop/closed_form.hpp"

#include "kthstop/dp.hpp"
#include "kthstop/policy_eval.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace kthstop;

TEST_CASE("best-choice threshold and value", "[closed_form]") {
    CHECK(r_threshold(3) == 2);
    CHECK(p1(3) == Rational(1, 2));
    CHECK(r_threshold(4) == 2);
    CHECK(p1(4) == Rational(11, 24));
    CHECK(r_threshold(2) == 1);
    CHECK(p1(2) == Rational(1, 2));
    CHECK_THROWS_AS(r_threshold(1), std::domain_error);

    // minimality of the scan: the tail sum brackets 1 around the threshold
    for (int n = 3; n <= 200; ++n) {
        const int r = r_threshold(n);
        REQUIRE(harmonic_shift_sum(r + 1, n, 1) <= 1);
        if (r > 1) REQUIRE(harmonic_shift_sum(r, n, 1) > 1);
    }
}

TEST_CASE("second-best threshold and value", "[closed_form]") {
    CHECK(rprime_threshold(5) == 3);
    CHECK(p2(5) == Rational(3, 10));
    CHECK(rprime_threshold(4) == 3);
    CHECK(p2(4) == Rational(1, 3));
    CHECK(rprime_threshold(2) == 2);
    CHECK(p2(2) == Rational(1, 2));
    for (int n = 2; n <= 500; ++n) {
        const int r = rprime_threshold(n);
        REQUIRE(2 * r >= n + 1);
        REQUIRE(2 * (r - 1) < n + 1);
    }
}

TEST_CASE("two-threshold data for known n", "[closed_form]") {
    CHECK(k3_thresholds(13).a == 7);
    CHECK(k3_thresholds(13).b == 9);
    CHECK(k3_thresholds(3).b == 3);
    CHECK(k3_thresholds(3).a == 2);
    CHECK(k3_thresholds(3).u == 2);
    CHECK(k3_thresholds(32).b == 20);  // tail sum 0.49987... needs exactness
    CHECK_THROWS_AS(k3_thresholds(2), std::domain_error);
}

TEST_CASE("threshold scans bracket their defining sums", "[closed_form][property]") {
    for (int n = 3; n <= 400; ++n) {
        const K3Thresholds& th = k3_thresholds(n);
        CAPTURE(n, th.a, th.b);
        REQUIRE(th.a < th.b);
        REQUIRE(3 <= th.b);
        // b is the minimal stage where the tail drops to 1/2
        REQUIRE(harmonic_shift_sum(th.b + 1, n, 2) <= Rational(1, 2));
        REQUIRE(harmonic_shift_sum(th.b, n, 2) > Rational(1, 2));
        // u matches its definition evaluated by the plain fold
        REQUIRE(th.u == Rational((th.b - 2) * (2 * n - 4)) * harmonic_shift_sum(th.b, n, 2));
        // a is the minimal nonpositive point of f
        REQUIRE(th.f(th.a) <= 0);
        REQUIRE(th.f(th.a - 1) > 0);
        REQUIRE(th.f(1) > 0);
    }
}

TEST_CASE("thresholds are staircases in n", "[closed_form][property]") {
    for (int n = 3; n < 400; ++n) {
        const K3Thresholds& cur = k3_thresholds(n);
        const K3Thresholds& nxt = k3_thresholds(n + 1);
        CAPTURE(n);
        REQUIRE(cur.b <= nxt.b);
        REQUIRE(nxt.b <= cur.b + 1);
        REQUIRE(cur.a <= nxt.a);
        REQUIRE(nxt.a <= cur.a + 1);
    }
}

TEST_CASE("closed-form values equal backward induction", "[closed_form][oracle]") {
    for (int n = 2; n <= 120; ++n) {
        CAPTURE(n);
        REQUIRE(p1(n) == p_value(n, 1));
        REQUIRE(p2(n) == p_value(n, 2));
        if (n >= 3) REQUIRE(p3(n) == p_value(n, 3));
    }
    CHECK(p3(3) == Rational(1, 2));
    CHECK(p3(13) == Rational(13457, 51480));
}

TEST_CASE("h agrees with evaluating the rule it describes", "[closed_form][oracle]") {
    const Goal third = Goal::single(3);

    // proved range: every stage and rank
    for (const int n : {32, 40, 55}) {
        const auto cv = conditional_table(n, third, tau3_policy(n));
        for (int j = 1; j <= n; ++j)
            for (int x = 1; x <= j; ++x) {
                CAPTURE(n, j, x);
                REQUIRE(h_value(n, j, x) == cv.at(j, x));
            }
    }

    // below the proved range only h(1,1) is contracted; report other cells
    for (const int n : {5, 13, 25, 31}) {
        const auto cv = conditional_table(n, third, tau3_policy(n));
        int mismatches = 0;
        for (int j = 1; j <= n; ++j)
            for (int x = 1; x <= j; ++x)
                if (h_value(n, j, x) != cv.at(j, x)) ++mismatches;
        INFO("n=" << n << ": " << mismatches
                  << " cells differ from policy evaluation (informational below n=32)");
        CHECK(h_value(n, 1, 1) == cv.at(1, 1));
        if (mismatches > 0)
            WARN("h closed form deviates from policy evaluation at n=" << n << " in "
                                                                       << mismatches << " cells");
    }

    CHECK(h_value(40, k3_thresholds(40).a, 2) == reward_k3(40, k3_thresholds(40).a, 2));
    CHECK(h_value(40, 1, 1) == p_value(40, 3));
    CHECK(h_value(13, 8, 1) == conditional_value(13, third, tau3_policy(13), 8, 1));
}

TEST_CASE("h satisfies its own recursion", "[closed_form][property]") {
    for (const int n : {33, 40, 50}) {
        for (int j = 1; j < n; ++j) {
            const Rational avg = h_stage_average(n, j);
            // the row mean, exploiting that cells with x outside {2,3} coincide
            const int m = j + 1;
            Rational sum = h_value(n, m, 1) * (m - (m >= 3 ? 2 : 1)) + h_value(n, m, 2);
            if (m >= 3) sum += h_value(n, m, 3);
            CAPTURE(n, j);
            REQUIRE(avg == sum / m);
            for (int x = 1; x <= std::min(j, 4); ++x)
                REQUIRE(h_value(n, j, x) == std::max(reward_k3(n, j, x), avg));
        }
    }
}

TEST_CASE("solver continuation matches the closed-form stage average", "[closed_form]") {
    const SolveResult sr = solve(40, Goal::single(3));
    for (int j = 1; j < 40; ++j) {
        CAPTURE(j);
        REQUIRE(sr.table.continuation(j) == h_stage_average(40, j));
    }
}

TEST_CASE("threshold rules compile to the expected stop sets", "[closed_form]") {
    {
        const StagePolicy p = tau_policy(ThresholdPolicyDescriptor::third_best(13, 7, 9));
        CHECK(p.accept_count(6) == 0);
        CHECK(p.accept_list(7) == std::vector<int>{2});
        CHECK(p.accept_list(8) == std::vector<int>{2});
        CHECK(p.accept_list(9) == std::vector<int>{2, 3});
        CHECK(p.accept_list(12) == std::vector<int>{2, 3});
        CHECK(p.accept_count(13) == 13);
    }
    {
        const StagePolicy p = tau_policy(ThresholdPolicyDescriptor::best_choice(3, 2));
        CHECK(p.accept_count(1) == 0);
        CHECK(p.accept_list(2) == std::vector<int>{1});
        CHECK(p.accept_count(3) == 3);
    }
    {
        const StagePolicy p = tau_policy(ThresholdPolicyDescriptor::postdoc(5, 3));
        CHECK(p.accept_count(1) == 0);
        CHECK(p.accept_count(2) == 0);
        CHECK(p.accept_list(3) == std::vector<int>{2});
        CHECK(p.accept_list(4) == std::vector<int>{2});
        CHECK(p.accept_count(5) == 5);
    }
    CHECK_THROWS_AS(ThresholdPolicyDescriptor::third_best(10, 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(ThresholdPolicyDescriptor::best_choice(4, 5), std::invalid_argument);
}

TEST_CASE("limit constants", "[closed_form]") {
    const AsymptoticConstants c = asymptotic_constants();
    CHECK(c.d1 == Catch::Approx(0.466440116722138).epsilon(0).margin(1e-12));
    CHECK(c.d2 == Catch::Approx(0.606530659712633).epsilon(0).margin(1e-12));
    CHECK(c.p3_inf == Catch::Approx(0.232169387290714).epsilon(0).margin(1e-12));
    CHECK(c.d2 == Catch::Approx(std::exp(-0.5)).epsilon(0).margin(1e-15));
    CHECK(c.p3_inf == Catch::Approx(2 * c.d1 * c.d1 * (1 - c.d1)).epsilon(0).margin(1e-15));
    // equivalent form d1 (d1^2 - 2 d1 + 2 d2)
    CHECK(c.p3_inf ==
          Catch::Approx(c.d1 * (c.d1 * c.d1 - 2 * c.d1 + 2 * c.d2)).epsilon(0).margin(1e-15));
}

TEST_CASE("coarse threshold bounds at moderate n", "[closed_form][property]") {
    for (int n = 32; n <= 400; ++n) {
        const K3Thresholds& th = k3_thresholds(n);
        const double se = std::sqrt(std::exp(1.0));
        CAPTURE(n, th.b);
        REQUIRE((n - 1) / se + 1 < th.b);
        REQUIRE(th.b < (n - 1.5) / se + 2.5);
        REQUIRE(n + 5 < 2 * th.b);
        REQUIRE(3 * th.b < 2 * n - 1);
        REQUIRE(Rational(BigInt(th.b - 2) * (n - 2)) < th.u);
        REQUIRE(th.u <= Rational(BigInt(th.b) * (n - 2)));
    }
}

TEST_CASE("h_value range checks", "[closed_form]") {
    CHECK_THROWS_AS(h_value(2, 1, 1), std::domain_error);
    CHECK_THROWS_AS(h_value(10, 11, 1), std::invalid_argument);
    CHECK_THROWS_AS(h_value(10, 4, 5), std::invalid_argument);
    CHECK_THROWS_AS(h_stage_average(10, 10), std::invalid_argument);
    CHECK_THROWS_AS(p3(2), std::domain_error);
}
