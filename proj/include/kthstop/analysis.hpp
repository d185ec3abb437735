#pragma once

#include "kthstop/closed_form.hpp"
#include "kthstop/dp.hpp"
#include "kthstop/parallel.hpp"
#include "kthstop/policy_eval.hpp"
#include "kthstop/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace kthstop {

struct Finding {
    std::string check;
    bool pass = false;
    std::string detail;
};

// Result of one verification suite: a list of pass/fail findings plus a
// tabular payload for CSV export. Reports are pure functions of their inputs.
struct SuiteReport {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<Finding> findings;
    std::vector<std::string> table_header;
    std::vector<std::vector<std::string>> table_rows;

    bool pass() const {
        return std::all_of(findings.begin(), findings.end(),
                           [](const Finding& f) { return f.pass; });
    }
    std::size_t failures() const {
        return static_cast<std::size_t>(
            std::count_if(findings.begin(), findings.end(),
                          [](const Finding& f) { return !f.pass; }));
    }
};

namespace detail {

inline std::string pair_list(const std::vector<std::pair<int, int>>& ps, std::size_t limit = 12) {
    std::ostringstream os;
    for (std::size_t i = 0; i < ps.size() && i < limit; ++i) {
        if (i) os << " ";
        os << "(" << ps[i].first << "," << ps[i].second << ")";
    }
    if (ps.size() > limit) os << " ...";
    return os.str();
}

// Rational bounds on e, wide enough to be provably correct and tight enough
// that every comparison below has orders of magnitude more margin.
inline const Rational& e_lower() {
    static const Rational v(BigInt("271828182845904523"), BigInt("100000000000000000"));
    return v;
}
inline const Rational& e_upper() {
    static const Rational v(BigInt("271828182845904524"), BigInt("100000000000000000"));
    return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Two-threshold rule optimality, per n: the compiled rule's exact value must
// equal the backward-induction value, the induction's stop sets must contain
// relative rank 2 from stage a and rank 3 from stage b, and continuation must
// strictly beat stopping wherever the rule keeps going.
// ---------------------------------------------------------------------------
inline SuiteReport verify_theorem21(int n_lo, int n_hi, unsigned threads = 0) {
    if (n_lo < 3 || n_hi < n_lo)
        throw std::invalid_argument("verify_theorem21: need 3 <= n_lo <= n_hi");

    SuiteReport rep;
    rep.suite = "theorem21";
    rep.params = {{"from", std::to_string(n_lo)}, {"to", std::to_string(n_hi)}};
    rep.table_header = {"n", "a", "b", "value_num", "value_den", "value", "optimal"};

    const std::size_t count = static_cast<std::size_t>(n_hi - n_lo + 1);
    std::vector<Finding> findings(count);
    std::vector<std::vector<std::string>> rows(count);
    const Goal third = Goal::single(3);

    detail::parallel_for(
        count,
        [&](std::size_t idx) {
            const int n = n_lo + static_cast<int>(idx);
            const K3Thresholds& th = k3_thresholds(n);
            const SolveResult sr = solve(n, third);
            const Rational rule_value = evaluate(n, third, tau3_policy(n));

            std::ostringstream bad;
            if (rule_value != sr.table.value) bad << " value-mismatch";
            for (int j = th.a; j < n; ++j)
                if (!sr.policy.accepts(j, 2)) bad << " stop-set-missing-2@" << j;
            for (int j = th.b; j < n; ++j)
                if (!sr.policy.accepts(j, 3)) bad << " stop-set-missing-3@" << j;

            // strict dominance of continuation where the rule never stops
            for (int j = 1; j < th.a; ++j)
                for (int x = 1; x <= std::min(j, 3); ++x)
                    if (!(reward(n, j, x, third) < sr.table.continuation(j)))
                        bad << " not-strict@" << j << "," << x;
            for (int j = th.a; j < th.b; ++j) {
                if (!(reward(n, j, 1, third) < sr.table.continuation(j)))
                    bad << " not-strict@" << j << ",1";
                if (j >= 3 && !(reward(n, j, 3, third) < sr.table.continuation(j)))
                    bad << " not-strict@" << j << ",3";
            }
            for (int j = th.b; j <= n - 1; ++j)
                if (!(reward(n, j, 1, third) < sr.table.continuation(j)))
                    bad << " not-strict@" << j << ",1";

            const bool ok = bad.str().empty();
            findings[idx] = {"n=" + std::to_string(n), ok, ok ? "" : bad.str()};
            rows[idx] = {std::to_string(n),
                         std::to_string(th.a),
                         std::to_string(th.b),
                         numerator(sr.table.value).str(),
                         denominator(sr.table.value).str(),
                         decimal_string(sr.table.value),
                         ok ? "yes" : "no"};
        },
        threads);

    rep.findings = std::move(findings);
    rep.table_rows = std::move(rows);
    return rep;
}

// ---------------------------------------------------------------------------
// Monotonicity in k and its exceptions.
// ---------------------------------------------------------------------------

// All (k, n) with 1 <= k < ceil(n/2), n <= n_max and p(k,n) < p(k+1,n).
inline std::vector<std::pair<int, int>> scan_k_monotonicity(int n_max, unsigned threads = 0) {
    if (n_max < 3) throw std::invalid_argument("scan_k_monotonicity: n_max must be >= 3");

    const std::size_t count = static_cast<std::size_t>(n_max - 2);
    std::vector<std::vector<std::pair<int, int>>> per_n(count);
    detail::parallel_for(
        count,
        [&](std::size_t idx) {
            const int n = 3 + static_cast<int>(idx);
            const int half = (n + 1) / 2;
            Rational prev = p_value(n, 1);
            for (int k = 1; k + 1 <= half; ++k) {
                Rational next = p_value(n, k + 1);
                if (prev < next) per_n[idx].emplace_back(k, n);
                prev = std::move(next);
            }
        },
        threads);

    std::vector<std::pair<int, int>> out;
    for (const auto& v : per_n) out.insert(out.end(), v.begin(), v.end());
    return out;
}

// The full violation set for n <= 50, frozen as reference data.
inline const std::vector<std::pair<int, int>>& reference_violations_n50() {
    static const std::vector<std::pair<int, int>> v = {
        {2, 5},  {2, 7},   {7, 15},  {9, 19},  {10, 21},
        {12, 25}, {21, 43}, {22, 47}, {24, 49}, {24, 50}};
    return v;
}

inline SuiteReport remark31_suite(int n_max, int p23_hi = 200, unsigned threads = 0) {
    SuiteReport rep;
    rep.suite = "remark31";
    rep.params = {{"nmax", std::to_string(n_max)}, {"p23_hi", std::to_string(p23_hi)}};
    rep.table_header = {"k", "n"};

    const auto found = scan_k_monotonicity(n_max, threads);
    for (const auto& [k, n] : found)
        rep.table_rows.push_back({std::to_string(k), std::to_string(n)});

    std::vector<std::pair<int, int>> expected;
    for (const auto& kn : reference_violations_n50())
        if (kn.second <= n_max) expected.push_back(kn);
    std::vector<std::pair<int, int>> found_le50;
    for (const auto& kn : found)
        if (kn.second <= 50) found_le50.push_back(kn);

    const bool match = found_le50 == expected;
    rep.findings.push_back(
        {"violation set (n <= min(nmax,50)) matches reference", match,
         match ? detail::pair_list(found_le50)
               : "found: " + detail::pair_list(found_le50) +
                     " expected: " + detail::pair_list(expected)});

    bool p23 = true;
    int first_bad = 0;
    for (int n = 8; n <= p23_hi; ++n) {
        if (!(p2(n) > p3(n))) {
            p23 = false;
            first_bad = n;
            break;
        }
    }
    rep.findings.push_back({"p2(n) > p3(n) for 8 <= n <= " + std::to_string(p23_hi), p23,
                            p23 ? "" : "fails at n=" + std::to_string(first_bad)});
    return rep;
}

// Longest prefix k with p(1,n) >= p(2,n) >= ... >= p(k,n), k <= ceil(n/2).
inline int longest_monotone_prefix(int n) {
    const int half = (n + 1) / 2;
    int best = 1;
    Rational prev = p_value(n, 1);
    for (int k = 2; k <= half; ++k) {
        Rational cur = p_value(n, k);
        if (!(prev >= cur)) break;
        best = k;
        prev = std::move(cur);
    }
    return best;
}

inline SuiteReport scan_K_ratio(int n_max, unsigned threads = 0) {
    if (n_max < 3) throw std::invalid_argument("scan_K_ratio: n_max must be >= 3");
    SuiteReport rep;
    rep.suite = "K_ratio";
    rep.params = {{"nmax", std::to_string(n_max)}};
    rep.table_header = {"n", "K", "K_over_n"};

    const std::size_t count = static_cast<std::size_t>(n_max - 2);
    std::vector<int> ks(count);
    detail::parallel_for(
        count, [&](std::size_t idx) { ks[idx] = longest_monotone_prefix(3 + static_cast<int>(idx)); },
        threads);
    for (std::size_t idx = 0; idx < count; ++idx) {
        const int n = 3 + static_cast<int>(idx);
        rep.table_rows.push_back({std::to_string(n), std::to_string(ks[idx]),
                                  decimal_string(Rational(ks[idx], n), 6)});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Ordering in k at fixed n, and monotone behaviour as n grows.
// ---------------------------------------------------------------------------

inline SuiteReport check_theorem31(int n_max, unsigned threads = 0) {
    if (n_max < 3) throw std::invalid_argument("check_theorem31: n_max must be >= 3");
    SuiteReport rep;
    rep.suite = "theorem31";
    rep.params = {{"nmax", std::to_string(n_max)}};
    rep.table_header = {"n", "strict_max_at_ends", "symmetric"};

    const std::size_t count = static_cast<std::size_t>(n_max - 2);
    std::vector<Finding> findings(count);
    std::vector<std::vector<std::string>> rows(count);

    detail::parallel_for(
        count,
        [&](std::size_t idx) {
            const int n = 3 + static_cast<int>(idx);
            std::vector<Rational> p(static_cast<std::size_t>(n) + 1);
            for (int k = 1; k <= n; ++k) p[k] = p_value(n, k);

            bool strict = true, symmetric = true;
            std::ostringstream bad;
            for (int k = 2; k < n; ++k)
                if (!(p[1] > p[k])) {
                    strict = false;
                    bad << " p(1)<=p(" << k << ")";
                }
            for (int k = 1; k <= n; ++k)
                if (p[k] != p[n - k + 1]) {
                    symmetric = false;
                    bad << " asym@k=" << k;
                }
            findings[idx] = {"n=" + std::to_string(n), strict && symmetric, bad.str()};
            rows[idx] = {std::to_string(n), strict ? "yes" : "no", symmetric ? "yes" : "no"};
        },
        threads);

    rep.findings = std::move(findings);
    rep.table_rows = std::move(rows);
    return rep;
}

inline SuiteReport check_theorem32(int n_max, unsigned threads = 0) {
    if (n_max < 2) throw std::invalid_argument("check_theorem32: n_max must be >= 2");
    SuiteReport rep;
    rep.suite = "theorem32";
    rep.params = {{"nmax", std::to_string(n_max)}};
    rep.table_header = {"n", "decreasing_in_n", "diagonal", "ties"};

    const std::size_t count = static_cast<std::size_t>(n_max);  // n = 1..n_max
    std::vector<Finding> findings(count);
    std::vector<std::vector<std::string>> rows(count);

    detail::parallel_for(
        count,
        [&](std::size_t idx) {
            const int n = 1 + static_cast<int>(idx);
            bool dec = true, diag = true;
            int ties = 0;  // equalities observed; strictness is conjectured, not asserted
            std::ostringstream bad;
            for (int k = 1; k <= n; ++k) {
                const Rational cur = p_value(n, k);
                const Rational next_same_k = p_value(n + 1, k);
                const Rational next_diag = p_value(n + 1, k + 1);
                if (!(cur >= next_same_k)) {
                    dec = false;
                    bad << " inc@k=" << k;
                }
                if (!(cur >= next_diag)) {
                    diag = false;
                    bad << " diag@k=" << k;
                }
                if (cur == next_same_k) ++ties;
                if (cur == next_diag) ++ties;
            }
            findings[idx] = {"n=" + std::to_string(n) + "->" + std::to_string(n + 1), dec && diag,
                             bad.str()};
            rows[idx] = {std::to_string(n), dec ? "yes" : "no", diag ? "yes" : "no",
                         std::to_string(ties)};
        },
        threads);

    rep.findings = std::move(findings);
    rep.table_rows = std::move(rows);
    return rep;
}

// ---------------------------------------------------------------------------
// Extremal rank sets: among all goals of size c, the runs of lowest and
// highest ranks maximize the optimal value, with equal values.
// ---------------------------------------------------------------------------
inline SuiteReport check_gamma_extremality(int n, int c, std::uint64_t enumeration_budget = 100000,
                                           std::uint64_t sample = 0, std::uint64_t seed = 1,
                                           unsigned threads = 0) {
    if (!(1 <= c && c < n)) throw std::invalid_argument("check_gamma_extremality: need 1 <= c < n");

    SuiteReport rep;
    rep.suite = "theorem33";
    rep.params = {{"n", std::to_string(n)}, {"c", std::to_string(c)}};
    rep.table_header = {"gamma", "value_num", "value_den", "value", "maximal"};

    std::vector<std::vector<int>> gammas;
    const BigInt total = binomial(n, c);
    if (total <= enumeration_budget) {
        std::vector<int> idx(static_cast<std::size_t>(c));
        for (int i = 0; i < c; ++i) idx[i] = i + 1;
        for (;;) {
            gammas.push_back(idx);
            int i = c - 1;
            while (i >= 0 && idx[i] == n - (c - 1 - i)) --i;
            if (i < 0) break;
            ++idx[i];
            for (int t = i + 1; t < c; ++t) idx[t] = idx[t - 1] + 1;
        }
    } else if (sample > 0) {
        std::vector<int> lowest(static_cast<std::size_t>(c)), highest(static_cast<std::size_t>(c));
        for (int i = 0; i < c; ++i) {
            lowest[i] = i + 1;
            highest[i] = n - c + 1 + i;
        }
        gammas.push_back(lowest);
        gammas.push_back(highest);
        SplitMix64 rng(seed);
        for (std::uint64_t s = 0; s < sample; ++s) {
            std::vector<int> pool(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) pool[i] = i + 1;
            for (int i = n - 1; i >= 1; --i) {
                const auto k = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
                std::swap(pool[static_cast<std::size_t>(i)], pool[k]);
            }
            std::vector<int> g(pool.begin(), pool.begin() + c);
            std::sort(g.begin(), g.end());
            gammas.push_back(std::move(g));
        }
    } else {
        throw std::domain_error("check_gamma_extremality: enumeration budget exceeded (" +
                                total.str() + " subsets); pass a sample count");
    }

    std::vector<Rational> values(gammas.size());
    detail::parallel_for(
        gammas.size(),
        [&](std::size_t i) { values[i] = p_value(n, Goal::rank_set(gammas[i])); }, threads);

    Rational best = values[0];
    for (const auto& v : values) best = std::max(best, v);

    std::vector<int> lowest(static_cast<std::size_t>(c)), highest(static_cast<std::size_t>(c));
    for (int i = 0; i < c; ++i) {
        lowest[i] = i + 1;
        highest[i] = n - c + 1 + i;
    }
    Rational v_low, v_high;
    bool saw_low = false, saw_high = false;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        if (gammas[i] == lowest) {
            v_low = values[i];
            saw_low = true;
        }
        if (gammas[i] == highest) {
            v_high = values[i];
            saw_high = true;
        }
        std::string label;
        for (std::size_t t = 0; t < gammas[i].size(); ++t)
            label += (t ? " " : "") + std::to_string(gammas[i][t]);
        rep.table_rows.push_back({label, numerator(values[i]).str(), denominator(values[i]).str(),
                                  decimal_string(values[i]), values[i] == best ? "yes" : "no"});
    }

    rep.findings.push_back({"lowest-run goal attains the maximum", saw_low && v_low == best,
                            decimal_string(v_low)});
    rep.findings.push_back({"highest-run goal attains the maximum", saw_high && v_high == best,
                            decimal_string(v_high)});
    rep.findings.push_back({"lowest and highest runs have equal value",
                            saw_low && saw_high && v_low == v_high, ""});
    return rep;
}

// ---------------------------------------------------------------------------
// Inequality suite for the two-threshold analysis, plus threshold bounds.
// ---------------------------------------------------------------------------
inline SuiteReport check_lemmas(int n_lo = 32, int n_hi = 200, int bracket_lo = 3,
                                int bracket_hi = 2000, unsigned threads = 0) {
    if (n_lo < 32) n_lo = 32;
    if (bracket_lo < 3) bracket_lo = 3;
    if (n_hi < n_lo || bracket_hi < bracket_lo)
        throw std::invalid_argument("check_lemmas: empty range");

    SuiteReport rep;
    rep.suite = "lemmas";
    rep.params = {{"from", std::to_string(n_lo)},
                  {"to", std::to_string(n_hi)},
                  {"bracket_from", std::to_string(bracket_lo)},
                  {"bracket_to", std::to_string(bracket_hi)}};
    rep.table_header = {"check", "range", "violations"};

    struct Claim {
        std::string name;
        std::string range;
        std::vector<int> bad;
    };
    // inequality sweep over [n_lo, n_hi]
    const std::size_t count = static_cast<std::size_t>(n_hi - n_lo + 1);
    std::vector<std::uint32_t> flags(count, 0);  // bit per claim
    enum : std::uint32_t {
        kBelowA = 1u << 0,      // y_j(x) strictly below continuation for j < a
        kMidAccept2 = 1u << 1,  // y_j(2) >= continuation for a <= j < b
        kMidReject1 = 1u << 2,
        kMidReject3 = 1u << 3,
        kTopReject1 = 1u << 4,  // b <= j <= n-1
        kTopAccept2 = 1u << 5,
        kTopAccept3 = 1u << 6,
        kRecursion = 1u << 7,   // h_j(x) = max{y_j(x), stage average}
        kStageAvg = 1u << 8,    // closed-form stage average equals the row mean
    };

    detail::parallel_for(
        count,
        [&](std::size_t idx) {
            const int n = n_lo + static_cast<int>(idx);
            const K3Thresholds& th = k3_thresholds(n);
            std::uint32_t f = 0;

            for (int j = 1; j < th.a; ++j) {
                const Rational avg = h_stage_average(n, j);
                if (!(avg > 0)) f |= kBelowA;
                for (int x = 1; x <= std::min(j, 3); ++x)
                    if (!(reward_k3(n, j, x) < avg)) f |= kBelowA;
            }
            for (int j = th.a; j < th.b; ++j) {
                const Rational avg = h_stage_average(n, j);
                if (!(reward_k3(n, j, 2) >= avg)) f |= kMidAccept2;
                if (!(reward_k3(n, j, 1) < avg)) f |= kMidReject1;
                if (j >= 3 && !(reward_k3(n, j, 3) < avg)) f |= kMidReject3;
            }
            for (int j = th.b; j <= n - 1; ++j) {
                const Rational avg = h_stage_average(n, j);
                if (!(reward_k3(n, j, 1) < avg)) f |= kTopReject1;
                if (!(reward_k3(n, j, 2) >= avg)) f |= kTopAccept2;
                if (!(reward_k3(n, j, 3) >= avg)) f |= kTopAccept3;
            }
            for (int j = 1; j < n; ++j) {
                const Rational avg = h_stage_average(n, j);
                for (int x = 1; x <= std::min(j, 4); ++x) {
                    // x = 4 exercises the same code path as every deeper rank
                    if (h_value(n, j, x) != std::max(reward_k3(n, j, x), avg)) f |= kRecursion;
                }
                // closed-form stage average vs the actual mean of row j+1
                const int m = j + 1;
                Rational sum = h_value(n, m, 1) * (m - (m >= 3 ? 2 : 1));
                sum += h_value(n, m, 2);
                if (m >= 3) sum += h_value(n, m, 3);
                if (avg != sum / m) f |= kStageAvg;
            }
            flags[idx] = f;
        },
        threads);

    auto collect = [&](std::uint32_t bit) {
        std::vector<int> bad;
        for (std::size_t i = 0; i < count; ++i)
            if (flags[i] & bit) bad.push_back(n_lo + static_cast<int>(i));
        return bad;
    };

    std::vector<Claim> claims;
    const std::string sweep =
        std::to_string(n_lo) + ".." + std::to_string(n_hi);
    claims.push_back({"j < a: stopping strictly suboptimal", sweep, collect(kBelowA)});
    claims.push_back({"a <= j < b: rank 2 stops", sweep, collect(kMidAccept2)});
    claims.push_back({"a <= j < b: rank 1 strictly continues", sweep, collect(kMidReject1)});
    claims.push_back({"a <= j < b: rank 3 strictly continues", sweep, collect(kMidReject3)});
    claims.push_back({"b <= j < n: rank 1 strictly continues", sweep, collect(kTopReject1)});
    claims.push_back({"b <= j < n: rank 2 stops", sweep, collect(kTopAccept2)});
    claims.push_back({"b <= j < n: rank 3 stops", sweep, collect(kTopAccept3)});
    claims.push_back({"h recursion h_j = max(y_j, stage average)", sweep, collect(kRecursion)});
    claims.push_back({"stage-average closed form equals row mean", sweep, collect(kStageAvg)});

    // threshold bounds over [32, bracket_hi] and bracketing over
    // [bracket_lo, bracket_hi]
    {
        const std::size_t bcount = static_cast<std::size_t>(bracket_hi - bracket_lo + 1);
        std::vector<std::uint32_t> bflags(bcount, 0);
        enum : std::uint32_t {
            kLower = 1u << 0,
            kUpper = 1u << 1,
            kCoarse = 1u << 2,
            kU = 1u << 3,
            kBracket = 1u << 4,
            kOrder = 1u << 5,
            kStair = 1u << 6,
        };
        detail::parallel_for(
            bcount,
            [&](std::size_t idx) {
                const int n = bracket_lo + static_cast<int>(idx);
                const K3Thresholds& th = k3_thresholds(n);
                const long long b = th.b;
                std::uint32_t f = 0;
                if (n >= 32) {
                    // (n-1)/sqrt(e) + 1 < b, checked as (n-1)^2 < (b-1)^2 e with
                    // the lower rational bound on e so rounding only hurts us
                    if (!(Rational(BigInt(n - 1) * (n - 1)) <
                          Rational(BigInt(b - 1) * (b - 1)) * detail::e_lower()))
                        f |= kLower;
                    // b < (n-3/2)/sqrt(e) + 5/2, i.e. (2b-5)^2 e < (2n-3)^2
                    if (!(Rational(BigInt(2 * b - 5) * (2 * b - 5)) * detail::e_upper() <
                          Rational(BigInt(2LL * n - 3) * (2LL * n - 3))))
                        f |= kUpper;
                    if (!(n + 5 < 2 * b && 3 * b < 2LL * n - 1)) f |= kCoarse;
                    if (!(Rational(BigInt(b - 2) * (n - 2)) < th.u &&
                          th.u <= Rational(BigInt(b) * (n - 2))))
                        f |= kU;
                }
                if (!(th.f(th.a) <= 0 && th.f(th.a - 1) > 0)) f |= kBracket;
                if (!(th.a < th.b)) f |= kOrder;
                if (n + 1 <= bracket_hi) {
                    const K3Thresholds& nx = k3_thresholds(n + 1);
                    if (!(th.b <= nx.b && nx.b <= th.b + 1 && th.a <= nx.a && nx.a <= th.a + 1))
                        f |= kStair;
                }
                bflags[idx] = f;
            },
            threads);

        auto bcollect = [&](std::uint32_t bit) {
            std::vector<int> bad;
            for (std::size_t i = 0; i < bcount; ++i)
                if (bflags[i] & bit) bad.push_back(bracket_lo + static_cast<int>(i));
            return bad;
        };
        const std::string brange = "32.." + std::to_string(bracket_hi);
        const std::string frange = std::to_string(bracket_lo) + ".." + std::to_string(bracket_hi);
        claims.push_back({"b above (n-1)/sqrt(e)+1", brange, bcollect(kLower)});
        claims.push_back({"b below (n-3/2)/sqrt(e)+5/2", brange, bcollect(kUpper)});
        claims.push_back({"(n+5)/2 < b < (2n-1)/3", brange, bcollect(kCoarse)});
        claims.push_back({"(b-2)(n-2) < u <= b(n-2)", brange, bcollect(kU)});
        claims.push_back({"f(a) <= 0 < f(a-1)", frange, bcollect(kBracket)});
        claims.push_back({"a < b", frange, bcollect(kOrder)});
        claims.push_back({"thresholds form staircases", frange, bcollect(kStair)});
    }

    for (auto& c : claims) {
        std::string detail;
        for (std::size_t i = 0; i < c.bad.size() && i < 10; ++i)
            detail += (i ? " " : "n=") + std::to_string(c.bad[i]);
        rep.findings.push_back({c.name + " [" + c.range + "]", c.bad.empty(), detail});
        rep.table_rows.push_back({c.name, c.range, std::to_string(c.bad.size())});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Convergence toward the limiting constants.
// ---------------------------------------------------------------------------
inline SuiteReport convergence_suite(const std::vector<int>& n_points) {
    if (n_points.empty()) throw std::invalid_argument("convergence_suite: no points");
    SuiteReport rep;
    rep.suite = "convergence";
    {
        std::string pts;
        for (std::size_t i = 0; i < n_points.size(); ++i)
            pts += (i ? "," : "") + std::to_string(n_points[i]);
        rep.params = {{"points", pts}};
    }
    rep.table_header = {"n",  "a",  "b",  "a_over_n", "b_over_n", "p1", "p2", "p3",
                        "d1", "d2", "inv_e", "quarter", "p3_inf"};

    const AsymptoticConstants lim = asymptotic_constants();
    const long double inv_e = std::exp(-1.0L);

    int n_star = 0;
    for (const int n : n_points) {
        if (n < 3) throw std::invalid_argument("convergence_suite: points must be >= 3");
        n_star = std::max(n_star, n);
        const K3Thresholds& th = k3_thresholds(n);
        const Rational v1 = p1(n), v2 = p2(n), v3 = p3(n);
        char buf[64];
        auto fmt = [&buf](double v) {
            std::snprintf(buf, sizeof buf, "%.12f", v);
            return std::string(buf);
        };
        rep.table_rows.push_back({std::to_string(n), std::to_string(th.a), std::to_string(th.b),
                                  fmt(double(th.a) / n), fmt(double(th.b) / n),
                                  decimal_string(v1), decimal_string(v2), decimal_string(v3),
                                  fmt(lim.d1), fmt(lim.d2), fmt(static_cast<double>(inv_e)),
                                  "0.25", fmt(lim.p3_inf)});

        // heuristic guard, not a proved rate: thresholds within 2/sqrt(n)
        const double guard = 2.0 / std::sqrt(static_cast<double>(n));
        const bool ga = std::abs(double(th.a) / n - lim.d1) < guard;
        const bool gb = std::abs(double(th.b) / n - lim.d2) < guard;
        rep.findings.push_back({"[heuristic] |a/n - d1| < 2/sqrt(n) at n=" + std::to_string(n),
                                ga, "guard=" + fmt(guard)});
        rep.findings.push_back({"[heuristic] |b/n - d2| < 2/sqrt(n) at n=" + std::to_string(n),
                                gb, "guard=" + fmt(guard)});
    }

    // tolerance windows at the largest point
    {
        const int n = n_star;
        const K3Thresholds& th = k3_thresholds(n);
        const long double v1 = static_cast<long double>(to_double(p1(n)));
        const long double v3 = static_cast<long double>(to_double(p3(n)));
        const Rational v2 = p2(n);

        const bool w1 = v1 > inv_e && v1 < inv_e + 1e-3L;
        const bool w2 = v2 >= Rational(1, 4) && v2 <= Rational(1, 4) + Rational(1, 1000);
        const bool w3 = v3 > static_cast<long double>(lim.p3_inf) &&
                        v3 < static_cast<long double>(lim.p3_inf) + 1e-2L;
        const bool wa = std::abs(double(th.a) / n - lim.d1) <= 1e-2;
        const bool wb = std::abs(double(th.b) / n - lim.d2) <= 1e-2;
        const std::string at = " at n=" + std::to_string(n);
        rep.findings.push_back({"p1 within (1/e, 1/e + 1e-3)" + at, w1, ""});
        rep.findings.push_back({"p2 within [1/4, 1/4 + 1e-3]" + at, w2, ""});
        rep.findings.push_back({"p3 within (p3_inf, p3_inf + 1e-2)" + at, w3, ""});
        rep.findings.push_back({"|a/n - d1| <= 1e-2" + at, wa, ""});
        rep.findings.push_back({"|b/n - d2| <= 1e-2" + at, wb, ""});
    }
    return rep;
}

}  // namespace kthstop
