#pragma once

#include "kthstop/rational.hpp"

#include <cstddef>
#include <functional>
#include <unordered_map>
#include <utility>

namespace kthstop {

namespace detail {

struct PairHash {
    std::size_t operator()(const std::pair<long long, long long>& p) const noexcept {
        const std::size_t h = std::hash<long long>{}(p.first);
        return h ^ (std::hash<long long>{}(p.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};

}  // namespace detail

// Binomial coefficient over the integers with the extended convention
// C(m,l) = 0 whenever m < l, m < 0 or l < 0, and C(0,0) = 1. Under this
// convention the Pascal identity C(m,l) = C(m-1,l) + C(m-1,l-1) holds at
// every integer pair except (0,0), where only ">=" survives.
// Memoized per thread; total function, never throws.
inline BigInt binomial(long long m, long long l) {
    if (l < 0 || m < 0 || m < l) return 0;
    if (l == 0 || l == m) return 1;
    if (l > m - l) l = m - l;

    thread_local std::unordered_map<std::pair<long long, long long>, BigInt, detail::PairHash> cache;
    const auto key = std::make_pair(m, l);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    BigInt r = 1;
    for (long long i = 1; i <= l; ++i) {
        r *= m - l + i;
        r /= i;  // exact: r is a binomial coefficient after every step
    }
    return cache.emplace(key, std::move(r)).first->second;
}

// Sum_{i=lo}^{hi} 1/(i - shift), with empty sums (lo > hi) equal to zero.
// A summand with zero denominator signals a caller bug.
inline Rational harmonic_shift_sum(long long lo, long long hi, long long shift) {
    if (lo > hi) return Rational(0);
    if (lo <= shift && shift <= hi)
        throw std::domain_error("harmonic_shift_sum: i = shift inside summation range");
    Rational s = 0;
    for (long long i = lo; i <= hi; ++i) s += Rational(1) / (i - shift);
    return s;
}

// Two routes through the same convolution identity
//   sum_{i=d+1}^{c} C(c-1,i-1) C(n-c+1,j-i) = sum_{l=d}^{c-1} C(l-1,d-1) C(n-l,j-d-1),
// kept separate so tests can confirm they agree rather than assume it.
inline BigInt chu_vandermonde_lhs(long long c, long long d, long long n, long long j) {
    BigInt s = 0;
    for (long long i = d + 1; i <= c; ++i) s += binomial(c - 1, i - 1) * binomial(n - c + 1, j - i);
    return s;
}

inline BigInt chu_vandermonde_rhs(long long c, long long d, long long n, long long j) {
    BigInt s = 0;
    for (long long l = d; l <= c - 1; ++l) s += binomial(l - 1, d - 1) * binomial(n - l, j - d - 1);
    return s;
}

}  // namespace kthstop
