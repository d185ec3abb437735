#pragma once

#include "kthstop/exact_math.hpp"
#include "kthstop/goal.hpp"

namespace kthstop {

// One observation in the sequential model: stage j of n, and the candidate's
// relative rank x among the first j interviewed.
struct RelativeRankObservation {
    int n;
    int j;
    int x;

    void validate() const {
        if (!(1 <= x && x <= j && j <= n))
            throw std::invalid_argument("RelativeRankObservation: need 1 <= x <= j <= n");
    }
};

// Probability that the stage-j candidate's absolute rank lies in the goal,
// given its relative rank x. Hypergeometric: a random j-subset must contain
// the rank-k candidate in sample position x, summed over the goal's ranks.
// At j = n this degenerates to the indicator of x being a goal rank.
inline Rational reward(const RelativeRankObservation& obs, const Goal& goal) {
    obs.validate();
    goal.validate(obs.n);
    BigInt num = 0;
    for (const int k : goal.ranks())
        num += binomial(k - 1, obs.x - 1) * binomial(obs.n - k, obs.j - obs.x);
    return Rational(std::move(num), binomial(obs.n, obs.j));
}

inline Rational reward(int n, int j, int x, const Goal& goal) {
    return reward(RelativeRankObservation{n, j, x}, goal);
}

// Closed form of the third-best stopping reward, with denominator
// n(n-1)(n-2). Independent of the hypergeometric route above; the two are
// cross-checked in the test suite.
inline Rational reward_k3(int n, int j, int x) {
    if (n < 3) throw std::domain_error("reward_k3: n must be >= 3");
    RelativeRankObservation{n, j, x}.validate();
    const BigInt den = BigInt(n) * (n - 1) * (n - 2);
    BigInt num = 0;
    switch (x) {
        case 1: num = BigInt(j) * (n - j - 1) * (n - j); break;
        case 2: num = BigInt(2) * j * (j - 1) * (n - j); break;
        case 3: num = BigInt(j) * (j - 1) * (j - 2); break;
        default: break;  // deeper relative ranks can never be third best
    }
    return Rational(std::move(num), den);
}

}  // namespace kthstop
