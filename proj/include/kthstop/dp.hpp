#pragma once

#include "kthstop/policy.hpp"
#include "kthstop/reward.hpp"

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace kthstop {

// Full backward-induction table for one (n, goal) instance.
//
//   V_n(x) = stopping reward at the last stage (an indicator),
//   V_j(x) = max{ reward(j, x), cont_j },   cont_j = mean of row j+1,
//
// and the optimal value of the stopping problem is V_1(1).
struct ValueTable {
    int n = 0;
    Goal goal = Goal::single(1);
    std::vector<std::vector<Rational>> V;  // V[j-1][x-1], 1 <= x <= j <= n
    std::vector<Rational> cont;            // cont[j-1], defined for j = 1..n-1
    Rational value;                        // V_1(1)

    const Rational& v(int j, int x) const { return V[j - 1][x - 1]; }
    const Rational& continuation(int j) const { return cont[j - 1]; }
};

struct SolveResult {
    ValueTable table;
    StagePolicy policy;
};

// Exact backward induction. The returned policy stops on every relative rank
// whose immediate reward at least matches the continuation value (ties stop),
// which makes its stop sets the maximal optimal ones.
inline SolveResult solve(int n, const Goal& goal) {
    if (n < 1) throw std::invalid_argument("solve: n must be >= 1");
    goal.validate(n);

    ValueTable t;
    t.n = n;
    t.goal = goal;
    t.V.resize(static_cast<std::size_t>(n));
    if (n > 1) t.cont.resize(static_cast<std::size_t>(n - 1));
    StagePolicy policy(n);

    auto& last = t.V[n - 1];
    last.reserve(n);
    for (int x = 1; x <= n; ++x) last.emplace_back(goal.contains(x) ? 1 : 0);

    // Rewards vanish outside a narrow window of relative ranks, so the row
    // sum is carried forward and only the window is recomputed per stage.
    const int kmin = goal.min_rank();
    const int kmax = goal.max_rank();
    Rational row_sum(goal.size());

    for (int j = n - 1; j >= 1; --j) {
        Rational c = row_sum / (j + 1);
        t.cont[j - 1] = c;

        auto& row = t.V[j - 1];
        row.assign(j, c);
        Rational s = c * j;

        const int xlo = std::max(1, j - (n - kmin));
        const int xhi = std::min(j, kmax);
        for (int x = xlo; x <= xhi; ++x) {
            Rational y = reward(n, j, x, goal);
            if (y >= c) {
                policy.set(j, x, true);
                s += y - c;
                row[x - 1] = std::move(y);
            }
        }
        row_sum = std::move(s);
    }

    t.value = t.V[0][0];
    return SolveResult{std::move(t), std::move(policy)};
}

// Value-only accessor with a process-wide memo, shared across threads.
inline Rational p_value(int n, const Goal& goal) {
    using Key = std::pair<int, std::vector<int>>;
    static std::map<Key, Rational> cache;
    static std::mutex mu;

    const Key key{n, goal.ranks()};
    {
        std::scoped_lock lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    Rational v = solve(n, goal).table.value;
    {
        std::scoped_lock lock(mu);
        cache.emplace(key, v);
    }
    return v;
}

inline Rational p_value(int n, int k) { return p_value(n, Goal::single(k)); }

}  // namespace kthstop
