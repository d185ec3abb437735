#pragma once

#include "kthstop/exact_math.hpp"
#include "kthstop/policy.hpp"
#include "kthstop/reward.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace kthstop {

// ---------------------------------------------------------------------------
// Single-threshold rules: best choice (k = 1) and second best (k = 2).
// ---------------------------------------------------------------------------

namespace detail {

// Growable cache of exact harmonic prefix sums H(m) = sum_{t=1}^{m} 1/t.
// Every tail sum below is a difference of two prefixes, so each threshold
// costs O(log n) comparisons instead of an O(n) rational scan.
inline Rational harmonic_prefix(int m) {
    static std::vector<Rational> H{Rational(0)};
    static std::mutex mu;
    std::scoped_lock lock(mu);
    while (static_cast<int>(H.size()) <= m)
        H.push_back(H.back() + Rational(1, static_cast<int>(H.size())));
    return H[static_cast<std::size_t>(m)];
}

// Scan for the best-choice threshold: the smallest j >= 1 with the tail sum
// T(j) = sum_{i=j+1}^{n} 1/(i-1) = H(n-1) - H(j-1) at most 1. Returns (j, T(j)).
inline std::pair<int, Rational> best_choice_scan(int n) {
    const Rational hn = harmonic_prefix(n - 1);
    const Rational target = hn - 1;  // T(j) <= 1  iff  H(j-1) >= target
    int lo = 1, hi = n;
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (harmonic_prefix(mid - 1) >= target) hi = mid;
        else lo = mid + 1;
    }
    return {lo, hn - harmonic_prefix(lo - 1)};
}

}  // namespace detail

inline int r_threshold(int n) {
    if (n < 2) throw std::domain_error("r_threshold: n must be >= 2");
    return detail::best_choice_scan(n).first;
}

// Maximum probability of stopping on the overall best candidate.
inline Rational p1(int n) {
    if (n < 2) throw std::domain_error("p1: n must be >= 2");
    auto [r, tail] = detail::best_choice_scan(n);
    if (r == 1) return Rational(1, n);  // the rule stops at stage 1 almost surely
    return Rational(r - 1, n) * (tail + Rational(1, r - 1));
}

inline int rprime_threshold(int n) {
    if (n < 2) throw std::domain_error("rprime_threshold: n must be >= 2");
    return (n + 2) / 2;  // smallest integer >= (n+1)/2
}

// Maximum probability of stopping on the second best candidate.
inline Rational p2(int n) {
    const int r = rprime_threshold(n);
    return Rational(BigInt(r - 1) * (n - r + 1), BigInt(n) * (n - 1));
}

// ---------------------------------------------------------------------------
// Two-threshold rule for the third best candidate.
// ---------------------------------------------------------------------------

// Threshold data for the third-best rule at a given n:
//   b = min{ j in 2..n : sum_{i=j+1}^{n} 1/(i-2) <= 1/2 },
//   u = (b-2)(2n-4) sum_{i=b}^{n} 1/(i-2),
//   f(x) = 3x^2 - (1+4n)x + (n-2)b + 2(n+1) + u,
//   a = min{ j in 2..n : f(j) <= 0 }.
// The b-scan sits on razor-thin margins (at n = 32 the tail sum at j = 20 is
// 0.49987...), so everything here is exact rational arithmetic; floats would
// flip thresholds.
struct K3Thresholds {
    int n = 0;
    int a = 0;
    int b = 0;
    Rational u;
    Rational f_const;  // (n-2) b + 2(n+1) + u

    Rational f(long long x) const {
        return Rational(BigInt(3) * x * x - BigInt(1 + 4LL * n) * x) + f_const;
    }
};

inline const K3Thresholds& k3_thresholds(int n) {
    if (n < 3) throw std::domain_error("k3_thresholds: n must be >= 3");

    static std::map<int, K3Thresholds> cache;
    static std::mutex mu;
    {
        std::scoped_lock lock(mu);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }

    K3Thresholds th;
    th.n = n;

    // smallest j in 2..n with the tail sum_{i=j+1}^{n} 1/(i-2) <= 1/2,
    // i.e. H(j-2) >= H(n-2) - 1/2; the tail is decreasing in j
    const Rational hn = detail::harmonic_prefix(n - 2);
    const Rational target = hn - Rational(1, 2);
    int lo = 2, hi = n;
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (detail::harmonic_prefix(mid - 2) >= target) hi = mid;
        else lo = mid + 1;
    }
    th.b = lo;
    if (th.b < 3) throw std::logic_error("k3_thresholds: lower scan bound reached");

    th.u = Rational(BigInt(th.b - 2) * (2 * n - 4)) * (hn - detail::harmonic_prefix(th.b - 3));
    th.f_const = Rational(BigInt(n - 2) * th.b + 2 * (n + 1)) + th.u;

    // integer scan for the first nonpositive value of the quadratic; the
    // comparison f(x) <= 0 is done as f_const <= -(3x^2 - (1+4n)x) to avoid
    // re-normalizing a large rational per step
    th.a = 0;
    const BigInt& fc_num = boost::multiprecision::numerator(th.f_const);
    const BigInt& fc_den = boost::multiprecision::denominator(th.f_const);
    for (long long x = 2; x <= n; ++x) {
        const BigInt quad = BigInt(3) * x * x - BigInt(1 + 4LL * n) * x;
        if (fc_num <= -quad * fc_den) {
            th.a = static_cast<int>(x);
            break;
        }
    }
    if (th.a == 0) throw std::logic_error("k3_thresholds: f has no nonpositive value in 2..n");

    std::scoped_lock lock(mu);
    return cache.emplace(n, std::move(th)).first->second;
}

namespace detail {

inline Rational k3_den(int n) { return Rational(BigInt(n) * (n - 1) * (n - 2)); }

// Value of the two-threshold rule before the lower threshold opens:
//   (a-1) [a^2 - (1+2n)a + (n-2)b + 2(n+1) + u] / (n(n-1)(n-2)).
inline Rational h_before_a(const K3Thresholds& th) {
    const long long a = th.a;
    const Rational inner = Rational(BigInt(a) * a - BigInt(1 + 2LL * th.n) * a) + th.f_const;
    return Rational(a - 1) * inner / k3_den(th.n);
}

// Continuation value while only relative rank 2 is accepted (a <= j < b):
//   j [j^2 + (1-2n)j + (n-2)b + 2 + u] / (n(n-1)(n-2)).
inline Rational h_mid(const K3Thresholds& th, long long j) {
    const Rational inner =
        Rational(BigInt(j) * j + BigInt(1 - 2LL * th.n) * j + BigInt(th.n - 2) * th.b + 2) + th.u;
    return Rational(j) * inner / k3_den(th.n);
}

// Continuation value once ranks 2 and 3 are both accepted (b <= j <= n-1):
//   j(j-1) [(2n-4) sum_{i=j+1}^{n} 1/(i-2) - (n-j)] / (n(n-1)(n-2)).
inline Rational h_tail(const K3Thresholds& th, long long j) {
    const Rational tail =
        harmonic_prefix(th.n - 2) - harmonic_prefix(static_cast<int>(j) - 2);
    const Rational inner = Rational(2 * th.n - 4) * tail - Rational(th.n - j);
    return Rational(BigInt(j) * (j - 1)) * inner / k3_den(th.n);
}

}  // namespace detail

// Conditional probability of ending on the third best candidate when the
// two-threshold rule governs stages j..n and the stage-j relative rank is x.
// Closed form; cross-checked against policy evaluation in the tests.
inline Rational h_value(int n, int j, int x) {
    if (n < 3) throw std::domain_error("h_value: n must be >= 3");
    RelativeRankObservation{n, j, x}.validate();
    const K3Thresholds& th = k3_thresholds(n);
    if (j < th.a) return detail::h_before_a(th);
    if (x == 2) return reward_k3(n, j, 2);
    if (j <= th.b - 1) return detail::h_mid(th, j);
    if (x == 3) return reward_k3(n, j, 3);
    return detail::h_tail(th, j);
}

// Stage average (1/(j+1)) sum_{i=1}^{j+1} h_{j+1}(i) in closed form,
// defined for 1 <= j <= n-1.
inline Rational h_stage_average(int n, int j) {
    if (n < 3) throw std::domain_error("h_stage_average: n must be >= 3");
    if (j < 1 || j > n - 1)
        throw std::invalid_argument("h_stage_average: j must be in 1..n-1");
    const K3Thresholds& th = k3_thresholds(n);
    if (j < th.a) return detail::h_before_a(th);
    if (j <= th.b - 1) return detail::h_mid(th, j);
    return detail::h_tail(th, j);
}

// Maximum probability of stopping on the third best candidate.
inline Rational p3(int n) {
    if (n < 3) throw std::domain_error("p3: n must be >= 3");
    return h_value(n, 1, 1);
}

// ---------------------------------------------------------------------------
// Threshold rules compiled to stage-set policies.
// ---------------------------------------------------------------------------

struct ThresholdPolicyDescriptor {
    enum class Kind { best_choice, postdoc, third_best };

    Kind kind = Kind::best_choice;
    int n = 0;
    int r = 0;  // best_choice / postdoc switch-on stage
    int a = 0;  // third_best: accept relative rank 2 from stage a
    int b = 0;  // third_best: accept relative rank 3 from stage b

    static ThresholdPolicyDescriptor best_choice(int n, int r) {
        if (n < 1 || r < 1 || r > n)
            throw std::invalid_argument("ThresholdPolicyDescriptor: need 1 <= r <= n");
        return {Kind::best_choice, n, r, 0, 0};
    }
    static ThresholdPolicyDescriptor postdoc(int n, int r) {
        if (n < 2 || r < 2 || r > n)
            throw std::invalid_argument("ThresholdPolicyDescriptor: need 2 <= r <= n");
        return {Kind::postdoc, n, r, 0, 0};
    }
    static ThresholdPolicyDescriptor third_best(int n, int a, int b) {
        if (n < 3 || a < 2 || !(a < b) || b > n)
            throw std::invalid_argument("ThresholdPolicyDescriptor: need 2 <= a < b <= n");
        return {Kind::third_best, n, 0, a, b};
    }
};

inline StagePolicy tau_policy(const ThresholdPolicyDescriptor& d) {
    StagePolicy p(d.n);
    switch (d.kind) {
        case ThresholdPolicyDescriptor::Kind::best_choice:
            for (int j = d.r; j < d.n; ++j) p.set(j, 1, true);
            break;
        case ThresholdPolicyDescriptor::Kind::postdoc:
            for (int j = d.r; j < d.n; ++j) p.set(j, 2, true);
            break;
        case ThresholdPolicyDescriptor::Kind::third_best:
            for (int j = d.a; j < d.n; ++j) p.set(j, 2, true);
            for (int j = d.b; j < d.n; ++j) p.set(j, 3, true);
            break;
    }
    return p;
}

inline StagePolicy tau1_policy(int n) {
    return tau_policy(ThresholdPolicyDescriptor::best_choice(n, r_threshold(n)));
}

inline StagePolicy tau2_policy(int n) {
    return tau_policy(ThresholdPolicyDescriptor::postdoc(n, rprime_threshold(n)));
}

inline StagePolicy tau3_policy(int n) {
    const K3Thresholds& th = k3_thresholds(n);
    return tau_policy(ThresholdPolicyDescriptor::third_best(n, th.a, th.b));
}

// ---------------------------------------------------------------------------
// Limits of the third-best thresholds and value.
// ---------------------------------------------------------------------------

struct AsymptoticConstants {
    double d1;      // lim a_n / n
    double d2;      // lim b_n / n = e^{-1/2}
    double p3_inf;  // lim p3(n) = 2 d1^2 (1 - d1)
};

// Evaluated in long double (64-bit mantissa) so all digits of the doubles
// returned are correct.
inline AsymptoticConstants asymptotic_constants() {
    const long double e = std::exp(1.0L);
    const long double se = std::sqrt(e);
    const long double d2 = 1.0L / se;
    const long double d1 = 2.0L / (2.0L * se + std::sqrt(4.0L * e - 6.0L * se));
    const long double p3_inf = 2.0L * d1 * d1 * (1.0L - d1);
    return {static_cast<double>(d1), static_cast<double>(d2), static_cast<double>(p3_inf)};
}

}  // namespace kthstop
