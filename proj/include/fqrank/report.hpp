#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bounds.hpp"
#include "diagonalize.hpp"
#include "oracle.hpp"
#include "pattern.hpp"
#include "rational.hpp"

namespace fqrank {

inline constexpr const char* kToolName = "fqrank";
inline constexpr const char* kToolVersion = "0.1.0";

/// Everything one CLI run produced for one pattern: the bounds, the
/// structures behind them, an optional oracle result and the full effective
/// configuration, so any output can be reproduced from the report alone.
struct BoundReport {
    std::string subcommand;
    std::string field_designation;
    SupportPattern pattern{1, 1};
    std::string algorithm;  // "single", "parallel", "both" or "" when not run
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    int budget_log2 = kDefaultBudgetLog2;

    bool ho_inapplicable = false;
    std::optional<Rational> ho;
    std::optional<Rational> block_single;
    std::optional<BlockStructure> structure_single;
    std::optional<Rational> block_parallel;
    std::optional<BlockStructure> structure_parallel;
    std::optional<Rational> upper;
    std::optional<OracleResult> oracle;

    /// Exact-oracle sandwich consistency; a violation is an internal bug.
    void validate() const {
        if (!oracle || oracle->method != OracleResult::Method::exact) return;
        const Rational exact = oracle->value();
        if (ho && *ho > exact) throw std::logic_error("ho bound above exact value");
        if (block_single && *block_single > exact)
            throw std::logic_error("single-pass block bound above exact value");
        if (block_parallel && *block_parallel > exact)
            throw std::logic_error("parallel-pass block bound above exact value");
        if (upper && exact > *upper) throw std::logic_error("exact value above upper bound");
    }
};

inline nlohmann::json structure_json(const BlockStructure& s) {
    nlohmann::json j;
    j["transposed"] = s.transposed;
    j["row_perm"] = s.row_perm;
    j["col_perm"] = s.col_perm;
    auto blocks = nlohmann::json::array();
    for (const auto& b : s.blocks) blocks.push_back({b.rows, b.cols});
    j["blocks"] = blocks;
    auto zeroed = nlohmann::json::array();
    for (const auto& [i, jj] : s.zeroed) zeroed.push_back({i, jj});
    j["zeroed"] = zeroed;
    return j;
}

inline BlockStructure structure_from_json(const nlohmann::json& j) {
    BlockStructure s;
    s.transposed = j.at("transposed").get<bool>();
    s.row_perm = j.at("row_perm").get<std::vector<int>>();
    s.col_perm = j.at("col_perm").get<std::vector<int>>();
    for (const auto& b : j.at("blocks")) s.blocks.push_back({b.at(0).get<int>(), b.at(1).get<int>()});
    for (const auto& z : j.at("zeroed")) s.zeroed.emplace_back(z.at(0).get<int>(), z.at(1).get<int>());
    return s;
}

inline nlohmann::json report_json(const BoundReport& r) {
    nlohmann::json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["subcommand"] = r.subcommand;
    j["field"] = r.field_designation;
    j["n"] = r.pattern.rows();
    j["k"] = r.pattern.cols();
    j["weight"] = r.pattern.weight();
    j["pattern_rows"] = r.pattern.row_strings();
    j["algorithm"] = r.algorithm.empty() ? nlohmann::json() : nlohmann::json(r.algorithm);
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["budget_log2"] = r.budget_log2;

    auto put_bound = [&j](const std::string& key, const std::optional<Rational>& v) {
        j[key] = v ? nlohmann::json(fraction_str(*v)) : nlohmann::json();
        j[key + "_decimal"] = v ? nlohmann::json(decimal_str(*v)) : nlohmann::json();
    };
    if (r.ho_inapplicable) {
        j["ho_bound"] = "inapplicable";
        j["ho_bound_decimal"] = nullptr;
    } else {
        put_bound("ho_bound", r.ho);
    }
    put_bound("block_bound_single", r.block_single);
    put_bound("block_bound_parallel", r.block_parallel);
    put_bound("upper_bound", r.upper);
    j["structure_single"] =
        r.structure_single ? structure_json(*r.structure_single) : nlohmann::json();
    j["structure_parallel"] =
        r.structure_parallel ? structure_json(*r.structure_parallel) : nlohmann::json();

    if (r.oracle) {
        j["oracle_method"] = r.oracle->method_name();
        j["oracle_value"] = r.oracle->raw_fraction();
        j["oracle_estimate"] = decimal_str(r.oracle->estimate());
        if (r.oracle->method == OracleResult::Method::monte_carlo) {
            j["oracle_trials"] = r.oracle->trials;
            j["oracle_stderr"] = r.oracle->standard_error;
        } else {
            j["oracle_trials"] = nullptr;
            j["oracle_stderr"] = nullptr;
        }
    } else {
        j["oracle_method"] = "none";
        j["oracle_value"] = nullptr;
        j["oracle_estimate"] = nullptr;
        j["oracle_trials"] = nullptr;
        j["oracle_stderr"] = nullptr;
    }
    return j;
}

namespace detail {

inline std::string pattern_inline(const SupportPattern& p) {
    std::string out;
    for (int i = 0; i < p.rows(); ++i) {
        if (i) out += ';';
        out += p.row_string(i);
    }
    return out;
}

inline std::string config_line(const BoundReport& r) {
    std::ostringstream os;
    os << "# " << kToolName << " v" << kToolVersion << " " << r.subcommand
       << " field=" << r.field_designation << " pattern=" << pattern_inline(r.pattern)
       << " algorithm=" << (r.algorithm.empty() ? "-" : r.algorithm) << " seed=" << r.seed
       << " trials=" << r.trials << " budget_log2=" << r.budget_log2;
    return os.str();
}

inline std::string blocks_brief(const BlockStructure& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.blocks.size(); ++i) {
        if (i) out += ",";
        out += "(" + std::to_string(s.blocks[i].rows) + "x" + std::to_string(s.blocks[i].cols) + ")";
    }
    return out + "]";
}

}  // namespace detail

inline std::string render_json(const BoundReport& r) { return report_json(r).dump(2) + "\n"; }

/// Decimal-only row; the schema is documented in the README.
inline std::string render_csv(const BoundReport& r) {
    std::ostringstream os;
    os << detail::config_line(r) << '\n';
    os << "field,n,k,weight,algorithm,seed,trials,budget_log2,ho_bound,"
          "block_bound_single,block_bound_parallel,upper_bound,oracle_method,"
          "oracle_estimate,oracle_stderr\n";
    auto dec = [](const std::optional<Rational>& v) { return v ? decimal_str(*v) : std::string(); };
    os << '"' << r.field_designation << '"' << ',' << r.pattern.rows() << ',' << r.pattern.cols()
       << ',' << r.pattern.weight() << ',' << r.algorithm << ',' << r.seed << ',' << r.trials
       << ',' << r.budget_log2 << ',' << dec(r.ho) << ',' << dec(r.block_single) << ','
       << dec(r.block_parallel) << ',' << dec(r.upper) << ','
       << (r.oracle ? r.oracle->method_name() : "none") << ','
       << (r.oracle ? decimal_str(r.oracle->estimate()) : "") << ','
       << (r.oracle && r.oracle->method == OracleResult::Method::monte_carlo
               ? decimal_str(r.oracle->standard_error)
               : "")
       << '\n';
    return os.str();
}

inline std::string render_text(const BoundReport& r) {
    std::ostringstream os;
    os << detail::config_line(r) << '\n';
    for (int i = 0; i < r.pattern.rows(); ++i) os << "# " << r.pattern.row_string(i) << '\n';

    if (r.ho_inapplicable) os << "ho_bound             = inapplicable\n";
    else if (r.ho)
        os << "ho_bound             = " << fraction_str(*r.ho) << " (" << decimal_str(*r.ho) << ")\n";
    if (r.block_single)
        os << "block_bound_single   = " << fraction_str(*r.block_single) << " ("
           << decimal_str(*r.block_single) << ") blocks=" << detail::blocks_brief(*r.structure_single)
           << '\n';
    if (r.block_parallel)
        os << "block_bound_parallel = " << fraction_str(*r.block_parallel) << " ("
           << decimal_str(*r.block_parallel)
           << ") blocks=" << detail::blocks_brief(*r.structure_parallel) << '\n';
    if (r.upper)
        os << "upper_bound          = " << fraction_str(*r.upper) << " (" << decimal_str(*r.upper)
           << ")\n";
    if (r.oracle) {
        os << "oracle_" << r.oracle->method_name() << "         = " << r.oracle->raw_fraction()
           << " (" << decimal_str(r.oracle->estimate()) << ")";
        if (r.oracle->method == OracleResult::Method::monte_carlo)
            os << " stderr=" << decimal_str(r.oracle->standard_error) << " trials="
               << r.oracle->trials;
        os << '\n';
    }
    return os.str();
}

}  // namespace fqrank
