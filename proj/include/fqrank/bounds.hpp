#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "field.hpp"
#include "pattern.hpp"
#include "rational.hpp"

namespace fqrank {

/// 1 - q^{-i} as an exact rational.
inline Rational unit_defect(const Field& f, int i) {
    if (i < 1) throw std::invalid_argument("exponent must be >= 1");
    const BigInt qi = boost::multiprecision::pow(BigInt(f.order()), static_cast<unsigned>(i));
    return Rational(qi - 1, qi);
}

/// (1 - 1/q)^n, the floor every block-diagonal bound sits on and the
/// Schwartz-Zippel style lower bound for patterns with a full-rank
/// realization.
inline Rational independence_floor(const Field& f, int n) {
    if (n < 1) throw std::invalid_argument("exponent must be >= 1");
    const BigInt num = boost::multiprecision::pow(BigInt(f.order() - 1), static_cast<unsigned>(n));
    const BigInt den = boost::multiprecision::pow(BigInt(f.order()), static_cast<unsigned>(n));
    return Rational(num, den);
}

/// Exact full-rank probability of the all-free n x k pattern:
/// with a = max(n,k), b = min(n,k), the product of (1 - q^{-i}) for
/// i = a-b+1 .. a. Orientation is normalized internally since rank is
/// transpose-invariant.
inline Rational full_weight_prob(int n, int k, const Field& f) {
    if (n < 1 || k < 1) throw std::invalid_argument("dimensions must be positive");
    const int a = std::max(n, k), b = std::min(n, k);
    Rational v(1);
    for (int i = a - b + 1; i <= a; ++i) v *= unit_defect(f, i);
    return v;
}

/// Lower bound (1 - 1/q)^{min(n,k)} for patterns that admit a full-rank
/// realization; nullopt when the precondition fails, which callers must
/// surface rather than treat as zero.
inline std::optional<Rational> ho_bound(const SupportPattern& b, const Field& f) {
    if (!has_full_rank_realization(b)) return std::nullopt;
    return independence_floor(f, std::min(b.rows(), b.cols()));
}

/// Lower bound from a block diagonalization: the product over blocks of
/// prod_{i=k_l-n_l+1}^{k_l} (1 - q^{-i}). Checks the structure invariants
/// and the floor (1 - 1/q)^n before returning.
inline Rational block_diag_bound(const BlockStructure& s, const Field& f) {
    if (s.blocks.empty()) throw std::invalid_argument("structure has no blocks");
    int row_total = 0, col_total = 0;
    Rational v(1);
    for (const auto& bl : s.blocks) {
        if (bl.rows < 1 || bl.cols < 1)
            throw std::invalid_argument("block dimensions must be positive");
        if (bl.rows > bl.cols)
            throw std::invalid_argument("block has more rows than columns");
        row_total += bl.rows;
        col_total += bl.cols;
        for (int i = bl.cols - bl.rows + 1; i <= bl.cols; ++i) v *= unit_defect(f, i);
    }
    if (!s.row_perm.empty() && static_cast<int>(s.row_perm.size()) != row_total)
        throw std::invalid_argument("blocks must cover every row exactly once");
    if (!s.col_perm.empty() && static_cast<int>(s.col_perm.size()) < col_total)
        throw std::invalid_argument("blocks use more columns than the pattern has");
    if (v < independence_floor(f, row_total))
        throw std::logic_error("block bound fell below its (1-1/q)^n floor");
    return v;
}

/// Upper bound: the full-weight probability at the pattern's dimensions.
/// Depends only on the shape, attained when the pattern is all-free.
inline Rational upper_bound(const SupportPattern& b, const Field& f) {
    return full_weight_prob(b.rows(), b.cols(), f);
}

}  // namespace fqrank
