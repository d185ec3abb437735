#pragma once

#include "kthstop/analysis.hpp"
#include "kthstop/goal.hpp"
#include "kthstop/policy.hpp"
#include "kthstop/rational.hpp"
#include "kthstop/simulate.hpp"

#include <json.hpp>

#include <string>

namespace kthstop {

inline constexpr const char* kSchemaId = "kthstop/1";

// Rationals cross the file boundary as decimal-string num/den pairs; the
// adjacent "decimal" field is a rendering, never an input.
inline nlohmann::json to_json(const Rational& r) {
    return {{"num", numerator(r).str()},
            {"den", denominator(r).str()},
            {"decimal", decimal_string(r)}};
}

inline Rational rational_from_json(const nlohmann::json& j) {
    const BigInt num(j.at("num").get<std::string>());
    const BigInt den(j.at("den").get<std::string>());
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(num) / den;
}

inline nlohmann::json to_json(const Goal& g) {
    if (g.is_single()) return {{"kind", "single"}, {"k", g.single_rank()}};
    return {{"kind", "set"}, {"ranks", g.ranks()}};
}

inline Goal goal_from_json(const nlohmann::json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "single") return Goal::single(j.at("k").get<int>());
    if (kind == "set") return Goal::rank_set(j.at("ranks").get<std::vector<int>>());
    throw std::invalid_argument("goal: unknown kind '" + kind + "'");
}

// Policy files: {"n": N, "accept": [S_1, ..., S_N]} with 1-based stages and
// ranks; S_N must list every rank (stopping at n is forced).
inline nlohmann::json to_json(const StagePolicy& p) {
    nlohmann::json accept = nlohmann::json::array();
    for (int j = 1; j <= p.n(); ++j) accept.push_back(p.accept_list(j));
    return {{"n", p.n()}, {"accept", accept}};
}

inline StagePolicy policy_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    const auto& accept = j.at("accept");
    if (!accept.is_array() || static_cast<int>(accept.size()) != n)
        throw std::invalid_argument("policy: accept must list one set per stage");
    StagePolicy p(n);
    for (int stage = 1; stage <= n; ++stage) {
        const auto xs = accept[stage - 1].get<std::vector<int>>();
        if (stage == n) {
            if (static_cast<int>(xs.size()) != n)
                throw std::invalid_argument("policy: stage n must accept every rank");
            continue;
        }
        for (const int x : xs) {
            if (x < 1 || x > stage)
                throw std::invalid_argument("policy: rank " + std::to_string(x) +
                                            " invalid at stage " + std::to_string(stage));
            p.set(stage, x, true);
        }
    }
    return p;
}

inline nlohmann::json to_json(const SimulationReport& r) {
    return {{"schema", kSchemaId},
            {"n", r.n},
            {"goal", to_json(r.goal)},
            {"trials", r.trials},
            {"successes", r.successes},
            {"estimate", r.estimate},
            {"std_error", r.std_error},
            {"ci95", {r.ci_lo, r.ci_hi}},
            {"seed", r.seed},
            {"rng_id", r.rng_id}};
}

inline nlohmann::json to_json(const SuiteReport& r) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    nlohmann::json findings = nlohmann::json::array();
    for (const auto& f : r.findings)
        findings.push_back({{"check", f.check}, {"pass", f.pass}, {"detail", f.detail}});
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.table_rows) rows.push_back(row);
    return {{"schema", kSchemaId}, {"suite", r.suite},   {"params", params},
            {"pass", r.pass()},    {"findings", findings}, {"columns", r.table_header},
            {"rows", rows}};
}

// RFC-style CSV: UTF-8, LF line endings, fields quoted when they contain a
// comma, quote or newline.
inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    return out + "\"";
}

inline std::string to_csv(const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ",";
        out += csv_escape(header[i]);
    }
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += csv_escape(row[i]);
        }
        out += "\n";
    }
    return out;
}

inline std::string to_csv(const SuiteReport& r) { return to_csv(r.table_header, r.table_rows); }

}  // namespace kthstop
