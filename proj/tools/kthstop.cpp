// Command-line surface: solve instances, print thresholds, evaluate and
// simulate policies, run verification suites, export tables.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 domain error,
// 4 unreadable input, 5 unwritable output.

#include "kthstop/kthstop.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitInput = 4;
constexpr int kExitOutput = 5;

struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int resolve_exact_cutoff(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("KTHSTOP_NMAX_EXACT")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return 2000;
}

void require_within_cutoff(int n, int cutoff) {
    if (n > cutoff)
        throw std::domain_error("n=" + std::to_string(n) + " exceeds the exact-mode cutoff " +
                                std::to_string(cutoff) +
                                " (raise with --nmax-exact or KTHSTOP_NMAX_EXACT)");
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw OutputError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw OutputError("write to '" + path + "' failed");
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content << "\n";
    else
        write_text(out_path, content + "\n");
}

kthstop::Goal make_goal(int k, const std::vector<int>& gamma) {
    if (k > 0 && !gamma.empty())
        throw CLI::ValidationError("goal", "--k and --gamma are mutually exclusive");
    if (k > 0) return kthstop::Goal::single(k);
    if (!gamma.empty()) return kthstop::Goal::rank_set(gamma);
    throw CLI::ValidationError("goal", "one of --k or --gamma is required");
}

kthstop::StagePolicy make_policy(const std::string& spec, int n) {
    if (spec == "stop-at-n") return kthstop::stop_only_at_n(n);
    if (spec == "tau1") return kthstop::tau1_policy(n);
    if (spec == "tau2") return kthstop::tau2_policy(n);
    if (spec == "tau3") return kthstop::tau3_policy(n);

    std::ifstream in(spec, std::ios::binary);
    if (!in) throw InputError("cannot read policy file '" + spec + "'");
    nlohmann::json j;
    try {
        in >> j;
        return kthstop::policy_from_json(j);
    } catch (const std::exception& e) {
        throw InputError("invalid policy file '" + spec + "': " + e.what());
    }
}

int run_solve(int n, const kthstop::Goal& goal, const std::string& out_path) {
    const kthstop::SolveResult sr = kthstop::solve(n, goal);
    nlohmann::json j{{"schema", kthstop::kSchemaId},
                     {"command", "solve"},
                     {"n", n},
                     {"goal", kthstop::to_json(goal)},
                     {"value", kthstop::to_json(sr.table.value)},
                     {"policy", kthstop::to_json(sr.policy)}};
    emit(j.dump(2), out_path);
    return kExitOk;
}

int run_thresholds(int n, const std::string& out_path) {
    const kthstop::K3Thresholds& th = kthstop::k3_thresholds(n);
    nlohmann::json j{{"schema", kthstop::kSchemaId},
                     {"command", "thresholds"},
                     {"n", n},
                     {"r", kthstop::r_threshold(n)},
                     {"rprime", kthstop::rprime_threshold(n)},
                     {"a", th.a},
                     {"b", th.b},
                     {"u", kthstop::to_json(th.u)},
                     {"p1", kthstop::to_json(kthstop::p1(n))},
                     {"p2", kthstop::to_json(kthstop::p2(n))},
                     {"p3", kthstop::to_json(kthstop::p3(n))}};
    emit(j.dump(2), out_path);
    return kExitOk;
}

int run_simulate(int n, const kthstop::Goal& goal, const std::string& policy_spec,
                 std::uint64_t trials, std::uint64_t seed, unsigned threads,
                 const std::string& out_path) {
    const kthstop::StagePolicy policy = make_policy(policy_spec, n);
    const kthstop::SimulationReport rep = kthstop::simulate(n, goal, policy, trials, seed, threads);
    nlohmann::json j = kthstop::to_json(rep);
    j["command"] = "simulate";
    j["policy_spec"] = policy_spec;
    emit(j.dump(2), out_path);
    return kExitOk;
}

int run_verify(const kthstop::SuiteReport& rep, std::string json_path, std::string csv_path) {
    if (json_path.empty()) json_path = "verify_" + rep.suite + ".json";
    if (csv_path.empty()) csv_path = "verify_" + rep.suite + ".csv";
    write_text(json_path, kthstop::to_json(rep).dump(2) + "\n");
    write_text(csv_path, kthstop::to_csv(rep));

    for (const auto& f : rep.findings) {
        std::cout << (f.pass ? "[PASS] " : "[FAIL] ") << f.check;
        if (!f.detail.empty()) std::cout << "  (" << f.detail << ")";
        std::cout << "\n";
    }
    std::cout << "suite " << rep.suite << ": " << (rep.pass() ? "PASS" : "FAIL") << " ("
              << rep.findings.size() - rep.failures() << "/" << rep.findings.size()
              << " checks), report: " << json_path << ", " << csv_path << "\n";
    return rep.pass() ? kExitOk : kExitVerifyFail;
}

int run_export(const std::string& table, int nmax, const std::vector<int>& points,
               const std::string& format, const std::string& out_path, unsigned threads) {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    if (table == "pkn") {
        header = {"n", "k", "p_num", "p_den", "p_decimal"};
        std::vector<std::vector<std::vector<std::string>>> per_n(static_cast<std::size_t>(nmax));
        kthstop::detail::parallel_for(
            static_cast<std::size_t>(nmax),
            [&](std::size_t idx) {
                const int n = 1 + static_cast<int>(idx);
                for (int k = 1; k <= n; ++k) {
                    const kthstop::Rational p = kthstop::p_value(n, k);
                    per_n[idx].push_back({std::to_string(n), std::to_string(k),
                                          kthstop::numerator(p).str(),
                                          kthstop::denominator(p).str(),
                                          kthstop::decimal_string(p)});
                }
            },
            threads);
        for (auto& block : per_n)
            for (auto& row : block) rows.push_back(std::move(row));
    } else if (table == "thresholds") {
        header = {"n", "r", "rprime", "a", "b", "u_num", "u_den", "p1", "p2", "p3"};
        for (int n = 3; n <= nmax; ++n) {
            const kthstop::K3Thresholds& th = kthstop::k3_thresholds(n);
            rows.push_back({std::to_string(n), std::to_string(kthstop::r_threshold(n)),
                            std::to_string(kthstop::rprime_threshold(n)), std::to_string(th.a),
                            std::to_string(th.b), kthstop::numerator(th.u).str(),
                            kthstop::denominator(th.u).str(),
                            kthstop::decimal_string(kthstop::p1(n)),
                            kthstop::decimal_string(kthstop::p2(n)),
                            kthstop::decimal_string(kthstop::p3(n))});
        }
    } else {  // convergence
        std::vector<int> pts;
        for (const int p : points)
            if (p >= 3 && p <= nmax) pts.push_back(p);
        if (pts.empty()) throw std::domain_error("export convergence: no points within range");
        const kthstop::SuiteReport rep = kthstop::convergence_suite(pts);
        header = rep.table_header;
        rows = rep.table_rows;
    }

    std::string content;
    if (format == "csv") {
        content = kthstop::to_csv(header, rows);
        if (out_path.empty()) {
            std::cout << content;
            return kExitOk;
        }
        write_text(out_path, content);
    } else {
        nlohmann::json j{{"schema", kthstop::kSchemaId},
                         {"command", "export"},
                         {"table", table},
                         {"columns", header},
                         {"rows", rows}};
        emit(j.dump(2), out_path);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver and verification toolkit for k-th best candidate stopping problems"};
    app.require_subcommand(1);

    int cutoff_flag = 0;
    unsigned threads = 0;
    app.add_option("--nmax-exact", cutoff_flag,
                   "Exact-mode size cutoff (default: KTHSTOP_NMAX_EXACT or 2000)");
    app.add_option("--threads", threads, "Worker threads (0 = all cores)");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Solve one (n, goal) instance exactly");
    int solve_n = 0, solve_k = 0;
    std::vector<int> solve_gamma;
    std::string solve_out;
    solve_cmd->add_option("-n", solve_n, "Number of candidates")->required();
    solve_cmd->add_option("--k", solve_k, "Target absolute rank");
    solve_cmd->add_option("--gamma", solve_gamma, "Target rank set, comma separated")
        ->delimiter(',');
    solve_cmd->add_option("-o,--out", solve_out, "Write JSON here instead of stdout");

    // thresholds
    auto* thr_cmd = app.add_subcommand("thresholds", "Print the closed-form thresholds for n");
    int thr_n = 0;
    std::string thr_out;
    thr_cmd->add_option("-n", thr_n, "Number of candidates")->required();
    thr_cmd->add_option("-o,--out", thr_out, "Write JSON here instead of stdout");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of a policy");
    int sim_n = 0, sim_k = 0;
    std::vector<int> sim_gamma;
    std::string sim_policy = "stop-at-n", sim_out;
    std::uint64_t sim_trials = 0, sim_seed = 0;
    sim_cmd->add_option("-n", sim_n, "Number of candidates")->required();
    sim_cmd->add_option("--k", sim_k, "Target absolute rank");
    sim_cmd->add_option("--gamma", sim_gamma, "Target rank set")->delimiter(',');
    sim_cmd->add_option("--policy", sim_policy, "tau1|tau2|tau3|stop-at-n or a policy JSON file");
    sim_cmd->add_option("--trials", sim_trials, "Trial count")->required();
    sim_cmd->add_option("--seed", sim_seed, "RNG seed")->required();
    sim_cmd->add_option("-o,--out", sim_out, "Write JSON here instead of stdout");

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "Run a verification suite");
    std::string suite;
    int ver_from = 3, ver_to = 100, ver_nmax = 50, ver_n = 10, ver_c = 3;
    int ver_bracket_to = 2000;
    std::uint64_t ver_budget = 100000, ver_sample = 0, ver_seed = 1;
    std::vector<int> ver_points = {100, 1000, 2000};
    std::string ver_json, ver_csv;
    ver_cmd->add_option("suite", suite, "Suite name")
        ->required()
        ->check(CLI::IsMember({"theorem21", "theorem31", "theorem32", "remark31", "theorem33",
                               "lemmas", "convergence"}));
    ver_cmd->add_option("--from", ver_from, "Lower n (theorem21, lemmas)");
    ver_cmd->add_option("--to", ver_to, "Upper n (theorem21, lemmas)");
    ver_cmd->add_option("--nmax", ver_nmax, "Upper n (theorem31, theorem32, remark31)");
    ver_cmd->add_option("-n", ver_n, "Instance size (theorem33)");
    ver_cmd->add_option("-c", ver_c, "Goal size (theorem33)");
    ver_cmd->add_option("--budget", ver_budget, "Max subsets to enumerate (theorem33)");
    ver_cmd->add_option("--sample", ver_sample, "Random subsets when over budget (theorem33)");
    ver_cmd->add_option("--seed", ver_seed, "Sampling seed (theorem33)");
    ver_cmd->add_option("--bracket-to", ver_bracket_to, "Upper n for bracketing checks (lemmas)");
    ver_cmd->add_option("--points", ver_points, "n values (convergence)")->delimiter(',');
    ver_cmd->add_option("--json", ver_json, "JSON report path (default verify_<suite>.json)");
    ver_cmd->add_option("--csv", ver_csv, "CSV report path (default verify_<suite>.csv)");

    // export
    auto* exp_cmd = app.add_subcommand("export", "Export a table");
    std::string exp_table, exp_format = "csv", exp_out;
    int exp_nmax = 20;
    std::vector<int> exp_points = {10, 20, 50, 100, 200, 500, 1000, 2000};
    exp_cmd->add_option("table", exp_table, "Table name")
        ->required()
        ->check(CLI::IsMember({"pkn", "thresholds", "convergence"}));
    exp_cmd->add_option("--nmax", exp_nmax, "Upper n");
    exp_cmd->add_option("--points", exp_points, "n values (convergence)")->delimiter(',');
    exp_cmd->add_option("--format", exp_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    exp_cmd->add_option("-o,--out", exp_out, "Output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const int cutoff = resolve_exact_cutoff(cutoff_flag);

    try {
        if (app.got_subcommand(solve_cmd)) {
            require_within_cutoff(solve_n, cutoff);
            return run_solve(solve_n, make_goal(solve_k, solve_gamma), solve_out);
        }
        if (app.got_subcommand(thr_cmd)) {
            require_within_cutoff(thr_n, cutoff);
            if (thr_n < 3) throw std::domain_error("thresholds: n must be >= 3");
            return run_thresholds(thr_n, thr_out);
        }
        if (app.got_subcommand(sim_cmd)) {
            if (sim_trials == 0) {
                std::cerr << "empty simulation\n";
                return kExitUsage;
            }
            require_within_cutoff(sim_n, cutoff);
            return run_simulate(sim_n, make_goal(sim_k, sim_gamma), sim_policy, sim_trials,
                                sim_seed, threads, sim_out);
        }
        if (app.got_subcommand(ver_cmd)) {
            kthstop::SuiteReport rep;
            if (suite == "theorem21") {
                require_within_cutoff(ver_to, cutoff);
                rep = kthstop::verify_theorem21(ver_from, ver_to, threads);
            } else if (suite == "theorem31") {
                require_within_cutoff(ver_nmax, cutoff);
                rep = kthstop::check_theorem31(ver_nmax, threads);
            } else if (suite == "theorem32") {
                require_within_cutoff(ver_nmax, cutoff);
                rep = kthstop::check_theorem32(ver_nmax, threads);
            } else if (suite == "remark31") {
                require_within_cutoff(ver_nmax, cutoff);
                rep = kthstop::remark31_suite(ver_nmax, 200, threads);
            } else if (suite == "theorem33") {
                require_within_cutoff(ver_n, cutoff);
                rep = kthstop::check_gamma_extremality(ver_n, ver_c, ver_budget, ver_sample,
                                                       ver_seed, threads);
            } else if (suite == "lemmas") {
                require_within_cutoff(std::max(ver_to, ver_bracket_to), cutoff);
                rep = kthstop::check_lemmas(std::max(ver_from, 32),
                                            ver_cmd->count("--to") ? ver_to : 200, 3,
                                            ver_bracket_to, threads);
            } else {
                for (const int p : ver_points) require_within_cutoff(p, cutoff);
                rep = kthstop::convergence_suite(ver_points);
            }
            return run_verify(rep, ver_json, ver_csv);
        }
        if (app.got_subcommand(exp_cmd)) {
            require_within_cutoff(exp_nmax, cutoff);
            return run_export(exp_table, exp_nmax, exp_points, exp_format, exp_out, threads);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const OutputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOutput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
