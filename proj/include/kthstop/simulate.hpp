#pragma once

#include "kthstop/goal.hpp"
#include "kthstop/parallel.hpp"
#include "kthstop/policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace kthstop {

// splitmix64 (Steele, Lea, Vigna). Pure 64-bit arithmetic, so streams are
// bit-identical across platforms and compilers.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, m), rejection sampled to kill modulo bias.
    std::uint64_t below(std::uint64_t m) {
        const std::uint64_t reject = (-m) % m;  // 2^64 mod m
        std::uint64_t r;
        do {
            r = next();
        } while (r < reject);
        return r % m;
    }

private:
    std::uint64_t state_;
};

// Identifies the full trial procedure: splitmix64 streams, Fisher-Yates
// shuffle, and fixed-size shard seeding. Recorded in every report so results
// can be reproduced bit for bit.
inline constexpr const char* kRngId = "splitmix64-fisher-yates/1";

struct SimulationReport {
    int n = 0;
    Goal goal = Goal::single(1);
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    double ci_lo = 0.0;  // 95% Wilson score interval
    double ci_hi = 0.0;
    std::uint64_t seed = 0;
    std::string rng_id = kRngId;
};

namespace detail {

inline constexpr std::uint64_t kShardTrials = 1ULL << 16;

inline std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t shard) {
    return SplitMix64(seed + (shard + 1) * 0x9e3779b97f4a7c15ULL).next();
}

inline std::uint64_t run_shard(int n, const std::vector<char>& is_goal_rank,
                               const StagePolicy& policy, std::uint64_t trials,
                               std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<int> ranks(static_cast<std::size_t>(n));
    std::vector<int> seen;  // sorted ranks of candidates interviewed so far
    seen.reserve(static_cast<std::size_t>(n));

    std::uint64_t wins = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::iota(ranks.begin(), ranks.end(), 1);
        for (int i = n - 1; i >= 1; --i) {
            const auto k = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
            std::swap(ranks[static_cast<std::size_t>(i)], ranks[k]);
        }

        seen.clear();
        for (int j = 1; j <= n; ++j) {
            const int r = ranks[static_cast<std::size_t>(j - 1)];
            const auto it = std::lower_bound(seen.begin(), seen.end(), r);
            const int x = static_cast<int>(it - seen.begin()) + 1;  // relative rank
            seen.insert(it, r);
            if (policy.accepts(j, x)) {
                wins += static_cast<std::uint64_t>(is_goal_rank[static_cast<std::size_t>(r)]);
                break;
            }
        }
    }
    return wins;
}

}  // namespace detail

// Monte Carlo estimate of a policy's success probability from uniform random
// interview orders. Trials are split into fixed-size shards with seeds derived
// from (seed, shard index), so the result is bit-identical for a given
// (seed, trials) no matter how many threads run the shards.
inline SimulationReport simulate(int n, const Goal& goal, const StagePolicy& policy,
                                 std::uint64_t trials, std::uint64_t seed,
                                 unsigned threads = 0) {
    if (trials == 0) throw std::invalid_argument("empty simulation");
    if (policy.n() != n) throw std::invalid_argument("simulate: policy built for different n");
    goal.validate(n);

    std::vector<char> is_goal_rank(static_cast<std::size_t>(n) + 1, 0);
    for (const int k : goal.ranks()) is_goal_rank[static_cast<std::size_t>(k)] = 1;

    const std::uint64_t shards = (trials + detail::kShardTrials - 1) / detail::kShardTrials;
    std::vector<std::uint64_t> shard_wins(static_cast<std::size_t>(shards), 0);
    detail::parallel_for(
        static_cast<std::size_t>(shards),
        [&](std::size_t s) {
            const std::uint64_t lo = static_cast<std::uint64_t>(s) * detail::kShardTrials;
            const std::uint64_t cnt = std::min(detail::kShardTrials, trials - lo);
            shard_wins[s] =
                detail::run_shard(n, is_goal_rank, policy, cnt, detail::shard_seed(seed, s));
        },
        threads);

    SimulationReport rep;
    rep.n = n;
    rep.goal = goal;
    rep.trials = trials;
    rep.successes = std::accumulate(shard_wins.begin(), shard_wins.end(), std::uint64_t{0});
    rep.seed = seed;
    rep.rng_id = kRngId;

    const double t = static_cast<double>(trials);
    const double p = static_cast<double>(rep.successes) / t;
    rep.estimate = p;
    rep.std_error = std::sqrt(p * (1.0 - p) / t);

    const double z = 1.959963984540054;  // 97.5% normal quantile
    const double z2 = z * z;
    const double denom = 1.0 + z2 / t;
    const double center = (p + z2 / (2.0 * t)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
    rep.ci_lo = center - half;
    rep.ci_hi = center + half;
    return rep;
}

}  // namespace kthstop
