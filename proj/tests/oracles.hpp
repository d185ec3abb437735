// Test-only oracles, independent of the library's computation paths: plain
// permutation counting and exhaustive policy search over integer win counts.
#pragma once

#include "kthstop/policy.hpp"
#include "kthstop/rational.hpp"
#include "kthstop/simulate.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

namespace kthstop::testing {

// Every permutation of 1..n as absolute ranks R_1..R_n, with the relative
// ranks X_j = |{ i <= j : R_i <= R_j }| computed by direct counting.
struct PermTable {
    int n = 0;
    std::vector<std::vector<int>> ranks;  // ranks[p][j-1] = R_j
    std::vector<std::vector<int>> rel;    // rel[p][j-1]   = X_j
};

inline PermTable enumerate_permutations(int n) {
    PermTable t;
    t.n = n;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    do {
        std::vector<int> x(static_cast<std::size_t>(n));
        for (int j = 1; j <= n; ++j) {
            int cnt = 0;
            for (int i = 1; i <= j; ++i)
                if (perm[i - 1] <= perm[j - 1]) ++cnt;
            x[j - 1] = cnt;
        }
        t.ranks.push_back(perm);
        t.rel.push_back(std::move(x));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return t;
}

// P(R_j = k | X_j = x) as a ratio of permutation counts.
inline Rational conditional_rank_frequency(const PermTable& t, int j, int x, int k) {
    long long hits = 0, total = 0;
    for (std::size_t p = 0; p < t.ranks.size(); ++p) {
        if (t.rel[p][j - 1] != x) continue;
        ++total;
        if (t.ranks[p][j - 1] == k) ++hits;
    }
    return Rational(hits, total);
}

namespace detail {

struct PolicySearch {
    const PermTable* table = nullptr;
    int goal_rank = 0;
    // per-depth scratch: bucket membership by relative rank, and the surviving
    // permutation indices for the recursive call
    std::array<std::array<std::vector<int>, 8>, 9> buckets;
    std::array<std::vector<int>, 9> survivors;

    long long best_from(int j, const std::vector<int>& alive) {
        const int n = table->n;
        if (j == n) {
            long long wins = 0;
            for (const int p : alive)
                if (table->ranks[p][n - 1] == goal_rank) ++wins;
            return wins;  // forced stop accepts everything
        }

        auto& bucket = buckets[static_cast<std::size_t>(j)];
        std::array<long long, 8> bucket_wins{};
        for (int x = 1; x <= j; ++x) bucket[x].clear();
        for (const int p : alive) {
            const int x = table->rel[p][j - 1];
            bucket[x].push_back(p);
            if (table->ranks[p][j - 1] == goal_rank) ++bucket_wins[x];
        }

        long long best = -1;
        auto& next_alive = survivors[static_cast<std::size_t>(j)];
        for (std::uint32_t mask = 0; mask < (1u << j); ++mask) {
            long long wins = 0;
            next_alive.clear();
            for (int x = 1; x <= j; ++x) {
                if (mask & (1u << (x - 1)))
                    wins += bucket_wins[x];
                else
                    next_alive.insert(next_alive.end(), bucket[x].begin(), bucket[x].end());
            }
            wins += best_from(j + 1, next_alive);
            best = std::max(best, wins);
        }
        return best;
    }
};

}  // namespace detail

// Maximum number of permutations any stage-set policy can win for the
// single-rank goal k, over all 2^(1+2+...+(n-1)) policies, each evaluated by
// walking every permutation to its stopping stage. n <= 8.
inline Rational exhaustive_policy_value(const PermTable& t, int k) {
    detail::PolicySearch search;
    search.table = &t;
    search.goal_rank = k;
    std::vector<int> alive(t.ranks.size());
    std::iota(alive.begin(), alive.end(), 0);
    const long long wins = search.best_from(1, alive);
    BigInt total = 1;
    for (int i = 2; i <= t.n; ++i) total *= i;
    return Rational(BigInt(wins), total);
}

// Random stage-set policy; each rank joins S_j with probability 1/2.
inline StagePolicy random_policy(int n, SplitMix64& rng) {
    StagePolicy p(n);
    for (int j = 1; j < n; ++j)
        for (int x = 1; x <= j; ++x)
            if (rng.next() & 1) p.set(j, x, true);
    return p;
}

}  // namespace kthstop::testing
