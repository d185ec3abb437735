#pragma once

#include "kthstop/policy.hpp"
#include "kthstop/reward.hpp"

#include <utility>
#include <vector>

namespace kthstop {

// Exact success probability of a stage-set policy:
//
//   sum_j [prod_{i<j} (1 - |S_i|/i)] * sum_{x in S_j} (1/j) * reward(j, x),
//
// using that the relative ranks are independent and uniform per stage. The
// forward survival-product route here and the backward recursion in
// conditional_table are independent computations of the same quantity.
inline Rational evaluate(int n, const Goal& goal, const StagePolicy& policy) {
    if (policy.n() != n) throw std::invalid_argument("evaluate: policy built for different n");
    goal.validate(n);

    Rational value = 0;
    Rational survival = 1;
    for (int j = 1; j <= n; ++j) {
        const int count = policy.accept_count(j);
        if (count > 0) {
            Rational stop_value = 0;
            for (int x = 1; x <= j; ++x)
                if (policy.accepts(j, x)) stop_value += reward(n, j, x, goal);
            value += survival * stop_value / j;
        }
        if (j < n) survival *= Rational(j - count, j);
    }
    return value;
}

// Conditional success probabilities cv(j, x) when `policy` governs stages
// j..n and the stage-j relative rank is x: the stopping reward if x is
// accepted, otherwise the mean of row j+1.
struct ConditionalValueTable {
    int n = 0;
    std::vector<std::vector<Rational>> cv;  // cv[j-1][x-1]
    std::vector<Rational> cont;             // cont[j-1], j = 1..n-1

    const Rational& at(int j, int x) const { return cv[j - 1][x - 1]; }
    const Rational& continuation(int j) const { return cont[j - 1]; }
};

inline ConditionalValueTable conditional_table(int n, const Goal& goal,
                                               const StagePolicy& policy) {
    if (policy.n() != n)
        throw std::invalid_argument("conditional_table: policy built for different n");
    goal.validate(n);

    ConditionalValueTable t;
    t.n = n;
    t.cv.resize(static_cast<std::size_t>(n));
    if (n > 1) t.cont.resize(static_cast<std::size_t>(n - 1));

    auto& last = t.cv[n - 1];
    last.reserve(n);
    for (int x = 1; x <= n; ++x) last.push_back(reward(n, n, x, goal));

    for (int j = n - 1; j >= 1; --j) {
        Rational sum = 0;
        for (const Rational& v : t.cv[j]) sum += v;
        Rational cont = sum / (j + 1);
        t.cont[j - 1] = cont;

        auto& row = t.cv[j - 1];
        row.reserve(j);
        for (int x = 1; x <= j; ++x)
            row.push_back(policy.accepts(j, x) ? reward(n, j, x, goal) : cont);
    }
    return t;
}

inline Rational conditional_value(int n, const Goal& goal, const StagePolicy& policy, int j,
                                  int x) {
    RelativeRankObservation{n, j, x}.validate();
    return conditional_table(n, goal, policy).at(j, x);
}

}  // namespace kthstop
