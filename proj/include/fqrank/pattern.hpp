#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "matrix.hpp"
#include "rng.hpp"

namespace fqrank {

/// Binary support pattern B: bit (i, j) is true where the random matrix
/// entry is free (uniform over the field), false where it is identically
/// zero. Cheap value type, stored as a packed row-major bitset.
class SupportPattern {
public:
    SupportPattern(int rows, int cols)
        : rows_(rows), cols_(cols),
          bits_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), false) {
        if (rows < 1 || cols < 1)
            throw std::invalid_argument("pattern dimensions must be positive");
    }

    static SupportPattern full(int rows, int cols) {
        SupportPattern p(rows, cols);
        p.bits_.assign(p.bits_.size(), true);
        return p;
    }

    static SupportPattern identity(int n) {
        SupportPattern p(n, n);
        for (int i = 0; i < n; ++i) p.bits_[static_cast<std::size_t>(i) * n + i] = true;
        return p;
    }

    /// Bit t of `mask` becomes entry (t / cols, t % cols); needs rows*cols <= 64.
    static SupportPattern from_mask(int rows, int cols, std::uint64_t mask) {
        SupportPattern p(rows, cols);
        if (static_cast<std::size_t>(rows) * cols > 64)
            throw std::invalid_argument("mask form limited to 64 cells");
        for (std::size_t t = 0; t < p.bits_.size(); ++t) p.bits_[t] = (mask >> t) & 1;
        return p;
    }

    /// Rows as strings of '0'/'1', e.g. {"110", "011"}.
    static SupportPattern from_rows(const std::vector<std::string>& rows) {
        if (rows.empty()) throw std::invalid_argument("pattern needs at least one row");
        SupportPattern p(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
        for (int i = 0; i < p.rows_; ++i) {
            if (static_cast<int>(rows[i].size()) != p.cols_)
                throw std::invalid_argument("pattern rows have inconsistent lengths");
            for (int j = 0; j < p.cols_; ++j) {
                const char c = rows[i][j];
                if (c != '0' && c != '1')
                    throw std::invalid_argument("pattern rows may contain only 0 and 1");
                p.bits_[static_cast<std::size_t>(i) * p.cols_ + j] = c == '1';
            }
        }
        return p;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool bit(int i, int j) const { return bits_[static_cast<std::size_t>(i) * cols_ + j]; }
    void set_bit(int i, int j, bool v) {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw std::out_of_range("pattern index out of range");
        bits_[static_cast<std::size_t>(i) * cols_ + j] = v;
    }

    int weight() const {
        return static_cast<int>(std::count(bits_.begin(), bits_.end(), true));
    }

    SupportPattern transposed() const {
        SupportPattern out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                out.bits_[static_cast<std::size_t>(j) * rows_ + i] = bit(i, j);
        return out;
    }

    /// Result (i, j) = this(row_perm[i], col_perm[j]).
    SupportPattern permuted(const std::vector<int>& row_perm,
                            const std::vector<int>& col_perm) const {
        if (!detail::is_permutation_of(row_perm, rows_))
            throw std::invalid_argument("row permutation does not match row count");
        if (!detail::is_permutation_of(col_perm, cols_))
            throw std::invalid_argument("column permutation does not match column count");
        SupportPattern out(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                out.bits_[static_cast<std::size_t>(i) * cols_ + j] =
                    bit(row_perm[i], col_perm[j]);
        return out;
    }

    std::string row_string(int i) const {
        std::string s(cols_, '0');
        for (int j = 0; j < cols_; ++j)
            if (bit(i, j)) s[j] = '1';
        return s;
    }

    std::vector<std::string> row_strings() const {
        std::vector<std::string> out;
        out.reserve(rows_);
        for (int i = 0; i < rows_; ++i) out.push_back(row_string(i));
        return out;
    }

    bool operator==(const SupportPattern& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
    }
    bool operator!=(const SupportPattern& o) const { return !(*this == o); }

private:
    int rows_, cols_;
    std::vector<bool> bits_;
};

/// Number of matrices in the support: q^weight. Guarded 64-bit exact value.
inline std::uint64_t support_size(const SupportPattern& b, const Field& f) {
    std::uint64_t size = 1;
    const std::uint64_t q = f.order();
    for (int w = b.weight(); w > 0; --w) {
        if (size > UINT64_MAX / q)
            throw std::overflow_error("support size q^wt exceeds 64-bit range");
        size *= q;
    }
    return size;
}

namespace detail {

inline void check_same_shape(const SupportPattern& a, const SupportPattern& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("patterns have different dimensions");
}

}  // namespace detail

/// Every position where `a` is free is also free in `b` (b's zeros are a
/// superset honoured by a).
inline bool precedes_eq(const SupportPattern& a, const SupportPattern& b) {
    detail::check_same_shape(a, b);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a.bit(i, j) && !b.bit(i, j)) return false;
    return true;
}

/// Strict partial order: a's support is a proper subset of b's.
inline bool precedes(const SupportPattern& a, const SupportPattern& b) {
    return precedes_eq(a, b) && a != b;
}

/// Copy of `b` with one free position forced to zero. The position must be
/// free; zeroing an already-zero cell is a caller bug.
inline SupportPattern zero_element(const SupportPattern& b, int i, int j) {
    if (i < 0 || i >= b.rows() || j < 0 || j >= b.cols())
        throw std::out_of_range("pattern index out of range");
    if (!b.bit(i, j))
        throw std::invalid_argument("position (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") is already zero");
    SupportPattern out = b;
    out.set_bit(i, j, false);
    return out;
}

namespace detail {

inline bool kuhn_augment(const SupportPattern& b, int row, std::vector<char>& visited,
                         std::vector<int>& match_row_of_col) {
    for (int c = 0; c < b.cols(); ++c) {
        if (!b.bit(row, c) || visited[c]) continue;
        visited[c] = 1;
        if (match_row_of_col[c] < 0 || kuhn_augment(b, match_row_of_col[c], visited, match_row_of_col)) {
            match_row_of_col[c] = row;
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// Maximum bipartite matching (rows against columns) by augmenting paths.
/// Returns the matched column of each row, -1 where unmatched. Deterministic:
/// rows and columns are scanned in ascending order.
inline std::vector<int> max_matching(const SupportPattern& b) {
    std::vector<int> match_row_of_col(b.cols(), -1);
    std::vector<char> visited(b.cols(), 0);
    for (int r = 0; r < b.rows(); ++r) {
        std::fill(visited.begin(), visited.end(), 0);
        detail::kuhn_augment(b, r, visited, match_row_of_col);
    }
    std::vector<int> match_col_of_row(b.rows(), -1);
    for (int c = 0; c < b.cols(); ++c)
        if (match_row_of_col[c] >= 0) match_col_of_row[match_row_of_col[c]] = c;
    return match_col_of_row;
}

inline int matching_size(const SupportPattern& b) {
    const auto m = max_matching(b);
    return static_cast<int>(std::count_if(m.begin(), m.end(), [](int c) { return c >= 0; }));
}

/// True iff some member of the support has rank min(n, k), i.e. the
/// bipartite incidence graph admits a matching of that size.
inline bool has_full_rank_realization(const SupportPattern& b) {
    return matching_size(b) == std::min(b.rows(), b.cols());
}

namespace detail {

// Draws the free entries in row-major order, one per set bit.
inline void sample_into(std::vector<std::uint32_t>& out, const SupportPattern& b,
                        const Field& f, SplitMix64& gen) {
    const int n = b.rows(), k = b.cols();
    const std::uint32_t q = f.order();
    out.assign(static_cast<std::size_t>(n) * k, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j)
            if (b.bit(i, j)) out[static_cast<std::size_t>(i) * k + j] = gen.below(q);
}

}  // namespace detail

/// One draw from the distribution the pattern describes: free entries
/// i.i.d. uniform over the field, the rest identically zero. Deterministic
/// given the seed.
inline Matrix sample(const SupportPattern& b, const Field& f, std::uint64_t seed) {
    SplitMix64 gen(seed);
    std::vector<std::uint32_t> values;
    detail::sample_into(values, b, f, gen);
    return Matrix::from_values(f, b.rows(), b.cols(), std::move(values));
}

/// Dimensions of one all-ones diagonal block.
struct BlockDims {
    int rows = 0;
    int cols = 0;
    bool operator==(const BlockDims& o) const { return rows == o.rows && cols == o.cols; }
};

/// Recipe that turns a pattern into diag(1^{n_1 x k_1}, ..., 1^{n_L x k_L})
/// padded with trailing all-zero columns: a transpose flag, row/column
/// permutations, block dimensions and the positions zeroed along the way.
/// `zeroed` positions refer to the oriented (possibly transposed), not yet
/// permuted pattern.
struct BlockStructure {
    bool transposed = false;
    std::vector<int> row_perm;
    std::vector<int> col_perm;
    std::vector<BlockDims> blocks;
    std::vector<std::pair<int, int>> zeroed;

    bool operator==(const BlockStructure& o) const {
        return transposed == o.transposed && row_perm == o.row_perm && col_perm == o.col_perm &&
               blocks == o.blocks && zeroed == o.zeroed;
    }
};

/// Applies the structure to `b` and checks every invariant: each block is
/// all-ones with rows <= cols, block rows cover the oriented pattern
/// exactly, columns beyond the blocks are entirely zero, and only free
/// positions were zeroed. Returns the permuted block-diagonal pattern (in
/// the structure's orientation). Throws when the structure does not match.
inline SupportPattern apply_structure(const SupportPattern& b, const BlockStructure& s) {
    SupportPattern oriented = s.transposed ? b.transposed() : b;
    const int n = oriented.rows(), k = oriented.cols();

    int row_total = 0, col_total = 0;
    for (const auto& bl : s.blocks) {
        if (bl.rows < 1 || bl.cols < 1)
            throw std::invalid_argument("block dimensions must be positive");
        if (bl.rows > bl.cols)
            throw std::invalid_argument("block has more rows than columns");
        row_total += bl.rows;
        col_total += bl.cols;
    }
    if (row_total != n)
        throw std::invalid_argument("blocks must cover every row exactly once");
    if (col_total > k)
        throw std::invalid_argument("blocks use more columns than the pattern has");

    SupportPattern working = oriented;
    for (const auto& [i, j] : s.zeroed) {
        if (i < 0 || i >= n || j < 0 || j >= k)
            throw std::invalid_argument("zeroed position out of range");
        if (!working.bit(i, j))
            throw std::invalid_argument("structure zeroes a position that is already zero");
        working.set_bit(i, j, false);
    }

    SupportPattern result = working.permuted(s.row_perm, s.col_perm);

    int r0 = 0, c0 = 0;
    std::size_t block_index = 0;
    for (int i = 0; i < n; ++i) {
        while (block_index < s.blocks.size() && i >= r0 + s.blocks[block_index].rows) {
            r0 += s.blocks[block_index].rows;
            c0 += s.blocks[block_index].cols;
            ++block_index;
        }
        for (int j = 0; j < k; ++j) {
            const bool inside = block_index < s.blocks.size() && j >= c0 &&
                                j < c0 + s.blocks[block_index].cols;
            if (result.bit(i, j) != inside)
                throw std::invalid_argument(
                    "structure does not diagonalize the pattern at (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
        }
    }
    return result;
}

/// File format: optional header "n=<n> k=<k>", then n rows of k characters
/// from {0,1}; whitespace inside rows is ignored.
inline SupportPattern parse_pattern(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::string> rows;
    int want_rows = -1, want_cols = -1;
    bool first = true;
    while (std::getline(is, line)) {
        std::string stripped;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) stripped += c;
        if (stripped.empty()) continue;
        if (first && stripped.rfind("n=", 0) == 0) {
            std::istringstream hs(line);
            std::string tok;
            while (hs >> tok) {
                if (tok.rfind("n=", 0) == 0) want_rows = std::stoi(tok.substr(2));
                else if (tok.rfind("k=", 0) == 0) want_cols = std::stoi(tok.substr(2));
                else throw std::invalid_argument("unexpected token '" + tok + "' in pattern header");
            }
            first = false;
            continue;
        }
        first = false;
        rows.push_back(stripped);
    }
    SupportPattern p = SupportPattern::from_rows(rows);
    if (want_rows >= 0 && (p.rows() != want_rows || p.cols() != want_cols))
        throw std::invalid_argument("pattern body does not match its header");
    return p;
}

/// Canonical writer: header plus compact rows.
inline std::string format_pattern(const SupportPattern& p) {
    std::ostringstream os;
    os << "n=" << p.rows() << " k=" << p.cols() << '\n';
    for (int i = 0; i < p.rows(); ++i) os << p.row_string(i) << '\n';
    return os.str();
}

}  // namespace fqrank
