#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bounds.hpp"
#include "diagonalize.hpp"
#include "field.hpp"
#include "oracle.hpp"
#include "pattern.hpp"
#include "report.hpp"

namespace fqrank {

// Exit-code contract: 0 success, 2 parse/precondition failure,
// 3 verification counterexample, 1 internal error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCounterexample = 3;

/// Default seed; an explicit constant (never wall clock) so every run is
/// reproducible by default.
inline constexpr std::uint64_t kDefaultSeed = 3735928559ULL;
inline constexpr std::uint64_t kDefaultTrials = 100000ULL;

namespace cli_detail {

struct Options {
    std::string field = "2";
    std::vector<std::string> fields;  // verify only
    std::string pattern;
    std::string algorithm = "both";
    std::string format = "text";
    std::string out_path;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t trials = 0;
    int budget_log2 = kDefaultBudgetLog2;
    int n = 2, k = 2;
    bool corrupt_bound = false;
};

inline SupportPattern load_pattern(const std::string& spec) {
    if (spec.empty()) throw std::invalid_argument("a --pattern is required");
    if (std::filesystem::exists(spec)) {
        std::ifstream in(spec);
        if (!in) throw std::invalid_argument("cannot read pattern file '" + spec + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_pattern(ss.str());
    }
    const bool inline_like = spec.find_first_not_of("01;/ \t") == std::string::npos &&
                             spec.find_first_of("01") != std::string::npos;
    if (!inline_like)
        throw std::invalid_argument("'" + spec +
                                    "' is neither a pattern file nor an inline pattern "
                                    "(rows of 0/1 separated by ';')");
    std::string text = spec;
    for (char& c : text)
        if (c == ';' || c == '/') c = '\n';
    return parse_pattern(text);
}

inline void emit(const BoundReport& r, const Options& o, std::ostream& out) {
    std::string rendered;
    if (o.format == "json") rendered = render_json(r);
    else if (o.format == "csv") rendered = render_csv(r);
    else rendered = render_text(r);
    if (o.out_path.empty()) {
        out << rendered;
    } else {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot write to '" + o.out_path + "'");
        f << rendered;
    }
}

inline BoundReport base_report(const char* subcommand, const Options& o, const Field& f,
                               const SupportPattern& p) {
    BoundReport r;
    r.subcommand = subcommand;
    r.field_designation = f.designation();
    r.pattern = p;
    r.seed = o.seed;
    r.trials = o.trials;
    r.budget_log2 = o.budget_log2;
    return r;
}

inline int cmd_bound(const Options& o, std::ostream& out) {
    const Field f = parse_field(o.field);
    const SupportPattern p = load_pattern(o.pattern);
    if (!has_full_rank_realization(p)) throw std::domain_error("no full-rank realization");

    BoundReport r = base_report("bound", o, f, p);
    r.algorithm = o.algorithm;
    r.ho = ho_bound(p, f);
    if (o.algorithm == "single" || o.algorithm == "both") {
        r.structure_single = greedy_single(p, f);
        r.block_single = block_diag_bound(*r.structure_single, f);
    }
    if (o.algorithm == "parallel" || o.algorithm == "both") {
        r.structure_parallel = greedy_parallel(p, f);
        r.block_parallel = block_diag_bound(*r.structure_parallel, f);
    }
    r.upper = upper_bound(p, f);
    try {
        r.oracle = exact_prob(p, f, o.budget_log2);
    } catch (const BudgetExceeded&) {
        if (o.trials > 0) r.oracle = mc_prob(p, f, o.trials, o.seed);
    }
    r.validate();
    emit(r, o, out);
    return kExitOk;
}

inline int cmd_exact(const Options& o, std::ostream& out) {
    const Field f = parse_field(o.field);
    const SupportPattern p = load_pattern(o.pattern);
    BoundReport r = base_report("exact", o, f, p);
    r.oracle = exact_prob(p, f, o.budget_log2);
    emit(r, o, out);
    return kExitOk;
}

inline int cmd_mc(const Options& o, std::ostream& out) {
    const Field f = parse_field(o.field);
    const SupportPattern p = load_pattern(o.pattern);
    BoundReport r = base_report("mc", o, f, p);
    r.oracle = mc_prob(p, f, o.trials, o.seed);
    emit(r, o, out);
    return kExitOk;
}

inline int cmd_diag(const Options& o, std::ostream& out) {
    const Field f = parse_field(o.field);
    const SupportPattern p = load_pattern(o.pattern);
    if (!has_full_rank_realization(p)) throw std::domain_error("no full-rank realization");

    BoundReport r = base_report("diag", o, f, p);
    r.algorithm = o.algorithm;
    if (o.algorithm == "single" || o.algorithm == "both") {
        r.structure_single = greedy_single(p, f);
        r.block_single = block_diag_bound(*r.structure_single, f);
    }
    if (o.algorithm == "parallel" || o.algorithm == "both") {
        r.structure_parallel = greedy_parallel(p, f);
        r.block_parallel = block_diag_bound(*r.structure_parallel, f);
    }
    emit(r, o, out);
    return kExitOk;
}

// Exhaustive sweep over all 2^(n*k) patterns of exactly n x k: oracle
// sandwich, Lemma-1 consistency, single-zeroing monotonicity, structure
// validity and the (1-1/q)^n floor for both greedy algorithms.
inline int cmd_verify(const Options& o, std::ostream& out) {
    if (o.n < 1 || o.k < 1) throw std::invalid_argument("dimensions must be positive");
    if (o.n * o.k > 20)
        throw std::invalid_argument("verify sweeps 2^(n*k) patterns; n*k is limited to 20");

    std::vector<std::string> field_strs = o.fields.empty() ? std::vector<std::string>{"2"} : o.fields;
    out << "# " << kToolName << " v" << kToolVersion << " verify n=" << o.n << " k=" << o.k
        << " fields=";
    for (std::size_t i = 0; i < field_strs.size(); ++i) out << (i ? "," : "") << field_strs[i];
    out << " budget_log2=" << o.budget_log2 << " corrupt_bound=" << (o.corrupt_bound ? 1 : 0)
        << '\n';

    const std::uint64_t total_masks = 1ULL << (o.n * o.k);
    std::uint64_t patterns_checked = 0, failures = 0;

    auto report_failure = [&](const Field& f, const SupportPattern& p, const std::string& check,
                              const std::string& detail) {
        ++failures;
        out << "counterexample q=" << f.designation() << " check=" << check << '\n';
        for (int i = 0; i < p.rows(); ++i) out << p.row_string(i) << '\n';
        out << detail << '\n';
    };

    for (const auto& fs : field_strs) {
        const Field f = parse_field(fs);
        std::map<std::uint64_t, Rational> exact_memo;
        auto exact_of = [&](std::uint64_t mask) -> const Rational& {
            auto it = exact_memo.find(mask);
            if (it == exact_memo.end()) {
                const auto p = SupportPattern::from_mask(o.n, o.k, mask);
                it = exact_memo.emplace(mask, exact_prob(p, f, o.budget_log2).value()).first;
            }
            return it->second;
        };

        for (std::uint64_t mask = 0; mask < total_masks; ++mask) {
            const auto p = SupportPattern::from_mask(o.n, o.k, mask);
            ++patterns_checked;
            const Rational exact = exact_of(mask);

            const Rational upper = upper_bound(p, f);
            if (exact > upper)
                report_failure(f, p, "upper_bound",
                               "exact=" + fraction_str(exact) + " upper=" + fraction_str(upper));

            if (p.weight() == o.n * o.k) {
                const Rational lemma = full_weight_prob(o.n, o.k, f);
                if (exact != lemma)
                    report_failure(f, p, "full_weight_prob",
                                   "exact=" + fraction_str(exact) + " formula=" + fraction_str(lemma));
            }

            // single-element zeroing monotonicity
            for (int t = 0; t < o.n * o.k; ++t) {
                if (!((mask >> t) & 1)) continue;
                const Rational& smaller = exact_of(mask & ~(1ULL << t));
                if (smaller > exact)
                    report_failure(f, p, "zeroing_monotonicity",
                                   "position=(" + std::to_string(t / o.k) + "," +
                                       std::to_string(t % o.k) + ") smaller=" +
                                       fraction_str(smaller) + " larger=" + fraction_str(exact));
            }

            if (!has_full_rank_realization(p)) continue;

            const Rational floor = independence_floor(f, std::min(o.n, o.k));
            if (floor > exact)
                report_failure(f, p, "ho_bound",
                               "ho=" + fraction_str(floor) + " exact=" + fraction_str(exact));

            for (const char* alg : {"single", "parallel"}) {
                const BlockStructure s = alg == std::string("single") ? greedy_single(p, f)
                                                                      : greedy_parallel(p, f);
                if (!verify_structure(p, s)) {
                    report_failure(f, p, std::string("structure_") + alg, "invalid structure");
                    continue;
                }
                Rational bound = block_diag_bound(s, f);
                if (o.corrupt_bound) bound = Rational(1);  // self-test hook
                if (bound > exact)
                    report_failure(f, p, std::string("sandwich_") + alg,
                                   "block=" + fraction_str(bound) + " exact=" + fraction_str(exact));
                if (bound < floor)
                    report_failure(f, p, std::string("floor_") + alg,
                                   "block=" + fraction_str(bound) + " floor=" + fraction_str(floor));
            }
        }
    }

    out << "verify: checked " << patterns_checked << " patterns (" << field_strs.size()
        << " field" << (field_strs.size() == 1 ? "" : "s") << "), " << failures << " failures\n";
    return failures == 0 ? kExitOk : kExitCounterexample;
}

}  // namespace cli_detail

/// Runs the tool against `args` (without argv[0]); everything written to
/// the given streams. Returns the process exit code.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    cli_detail::Options o;

    CLI::App app{"bounds on the full-rank probability of random matrices over GF(q) "
                 "with fixed zero patterns",
                 "fqrank"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool with_pattern) {
        sub->add_option("--field", o.field, "field designation, e.g. \"2\", \"3\", \"2^8\" or "
                                            "\"2^8 poly=1,0,1,1,1,0,0,0,1\"")
            ->capture_default_str();
        if (with_pattern)
            sub->add_option("--pattern", o.pattern,
                            "pattern file, or inline rows of 0/1 separated by ';'")
                ->required();
        sub->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"text", "json", "csv"}))
            ->capture_default_str();
        sub->add_option("--out", o.out_path, "write the report to this file instead of stdout");
    };

    CLI::App* bound = app.add_subcommand("bound", "compute every bound for one pattern");
    add_common(bound, true);
    bound->add_option("--algorithm", o.algorithm, "which diagonalizer(s) to run")
        ->check(CLI::IsMember({"single", "parallel", "both"}))
        ->capture_default_str();
    bound->add_option("--seed", o.seed, "seed for the Monte Carlo fallback")->capture_default_str();
    bound->add_option("--trials", o.trials,
                      "Monte Carlo trials used when the exact budget is exceeded (0 = skip)")
        ->capture_default_str();
    bound->add_option("--budget", o.budget_log2, "exact-enumeration budget as log2(realizations)")
        ->capture_default_str();

    CLI::App* exact = app.add_subcommand("exact", "exact full-rank probability by enumeration");
    add_common(exact, true);
    exact->add_option("--budget", o.budget_log2, "enumeration budget as log2(realizations)")
        ->capture_default_str();

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo full-rank probability estimate");
    add_common(mc, true);
    CLI::Option* mc_trials = mc->add_option("--trials", o.trials, "number of trials")
                                 ->default_str(std::to_string(kDefaultTrials));
    mc->add_option("--seed", o.seed, "RNG seed")->capture_default_str();

    CLI::App* diag = app.add_subcommand("diag", "block-diagonalize a pattern");
    add_common(diag, true);
    diag->add_option("--algorithm", o.algorithm, "which diagonalizer(s) to run")
        ->check(CLI::IsMember({"single", "parallel", "both"}))
        ->capture_default_str();

    CLI::App* verify = app.add_subcommand(
        "verify", "exhaustively check the bound theorems over all n x k patterns");
    verify->add_option("--n", o.n, "pattern rows")->capture_default_str();
    verify->add_option("--k", o.k, "pattern columns")->capture_default_str();
    verify->add_option("--field", o.fields, "field designation (repeatable)");
    verify->add_option("--budget", o.budget_log2, "enumeration budget as log2(realizations)")
        ->capture_default_str();
    verify->add_option("--out", o.out_path, "write the summary to this file instead of stdout");
    verify->add_flag("--corrupt-bound", o.corrupt_bound)->group("");  // self-test hook

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
        if (app.got_subcommand(mc) && mc_trials->count() == 0) o.trials = kDefaultTrials;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        std::ostringstream buffered;
        int code = kExitInternal;
        if (app.got_subcommand(bound)) code = cli_detail::cmd_bound(o, buffered);
        else if (app.got_subcommand(exact)) code = cli_detail::cmd_exact(o, buffered);
        else if (app.got_subcommand(mc)) code = cli_detail::cmd_mc(o, buffered);
        else if (app.got_subcommand(diag)) code = cli_detail::cmd_diag(o, buffered);
        else if (app.got_subcommand(verify)) {
            if (!o.out_path.empty()) {
                std::ofstream f(o.out_path, std::ios::binary);
                if (!f) throw std::invalid_argument("cannot write to '" + o.out_path + "'");
                code = cli_detail::cmd_verify(o, f);
            } else {
                code = cli_detail::cmd_verify(o, buffered);
            }
        }
        out << buffered.str();
        return code;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace fqrank
