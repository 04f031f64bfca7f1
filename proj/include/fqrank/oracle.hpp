#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "matrix.hpp"
#include "pattern.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace fqrank {

inline constexpr int kDefaultBudgetLog2 = 26;

/// Exhaustive enumeration was refused because the support is larger than
/// the configured budget; the caller should fall back to mc_prob.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ground-truth full-rank probability estimate. Exact results keep the raw
/// count over q^wt so reports can show the unreduced fraction.
struct OracleResult {
    enum class Method { exact, monte_carlo };

    Method method = Method::exact;
    BigInt numerator;    // full-rank count (exact) or hit count (MC)
    BigInt denominator;  // q^wt (exact) or trial count (MC)
    std::uint64_t trials = 0;      // MC only
    double standard_error = 0.0;   // MC only: sqrt(p(1-p)/N)

    Rational value() const { return Rational(numerator, denominator); }
    double estimate() const { return to_double(value()); }
    std::string raw_fraction() const { return numerator.str() + "/" + denominator.str(); }
    const char* method_name() const {
        return method == Method::exact ? "exact" : "monte_carlo";
    }
};

/// Exact full-rank probability by enumerating every assignment of field
/// elements to the free positions (row-major position order, canonical
/// element order). Refuses via BudgetExceeded when q^wt > 2^budget_log2.
inline OracleResult exact_prob(const SupportPattern& b, const Field& f,
                               int budget_log2 = kDefaultBudgetLog2) {
    const int n = b.rows(), k = b.cols();
    const std::uint32_t q = f.order();

    std::vector<std::pair<int, int>> free_cells;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j)
            if (b.bit(i, j)) free_cells.emplace_back(i, j);
    const int wt = static_cast<int>(free_cells.size());

    if (budget_log2 < 0 || budget_log2 > 62)
        throw std::invalid_argument("enumeration budget must be in [0, 62]");
    const std::uint64_t limit = 1ULL << budget_log2;
    std::uint64_t total = 1;
    for (int t = 0; t < wt; ++t) {
        if (total > limit / q)
            throw BudgetExceeded("enumerating q^wt = " + std::to_string(q) + "^" +
                                 std::to_string(wt) + " realizations exceeds the 2^" +
                                 std::to_string(budget_log2) +
                                 " budget; use Monte Carlo (mc_prob) instead");
        total *= q;
    }

    const int target = std::min(n, k);
    std::vector<std::uint32_t> digits(free_cells.size(), 0);
    std::vector<std::uint32_t> values(static_cast<std::size_t>(n) * k, 0);
    std::vector<std::uint32_t> work;
    std::uint64_t count = 0;
    for (std::uint64_t it = 0; it < total; ++it) {
        work = values;
        if (detail::rank_in_place(work, n, k, f) == target) ++count;
        // odometer step, first free position fastest
        for (std::size_t t = 0; t < digits.size(); ++t) {
            const auto [i, j] = free_cells[t];
            if (++digits[t] < q) {
                values[static_cast<std::size_t>(i) * k + j] = digits[t];
                break;
            }
            digits[t] = 0;
            values[static_cast<std::size_t>(i) * k + j] = 0;
        }
    }

    OracleResult r;
    r.method = OracleResult::Method::exact;
    r.numerator = count;
    r.denominator = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(wt));
    return r;
}

/// Monte Carlo estimate over `trials` independent draws. Each trial uses
/// its own stream derived from (seed, trial index), so the result is
/// bit-identical for a given (seed, trials) no matter how the trials are
/// partitioned.
inline OracleResult mc_prob(const SupportPattern& b, const Field& f, std::uint64_t trials,
                            std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trial count must be >= 1");
    const int n = b.rows(), k = b.cols();
    const int target = std::min(n, k);

    std::vector<std::uint32_t> values, work;
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 gen(derive_stream_seed(seed, t));
        detail::sample_into(values, b, f, gen);
        work = values;
        if (detail::rank_in_place(work, n, k, f) == target) ++hits;
    }

    OracleResult r;
    r.method = OracleResult::Method::monte_carlo;
    r.numerator = hits;
    r.denominator = trials;
    r.trials = trials;
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    r.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return r;
}

}  // namespace fqrank
