#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "field.hpp"
#include "pattern.hpp"
#include "rational.hpp"

namespace fqrank {

namespace detail {

/// A complete bipartite subgraph of the working pattern: every listed row
/// is linked to every listed column. Row/column index lists kept sorted.
struct Biclique {
    std::vector<int> rows;
    std::vector<int> cols;
};

// Grows a biclique from a seed edge over the unassigned part of `w`.
// Each step adds the row or column that keeps the biclique complete and
// maximizes its area; ties prefer columns, then the lowest index. Stops at
// maximality.
inline Biclique grow_biclique(const SupportPattern& w, const std::vector<char>& row_free,
                              const std::vector<char>& col_free, int seed_row, int seed_col) {
    const int n = w.rows(), k = w.cols();
    std::vector<char> in_row(n, 0), in_col(k, 0);
    Biclique bc;
    bc.rows.push_back(seed_row);
    bc.cols.push_back(seed_col);
    in_row[seed_row] = 1;
    in_col[seed_col] = 1;

    for (;;) {
        long best_area = -1;
        bool best_is_col = false;
        int best_index = -1;

        const long rows_sz = static_cast<long>(bc.rows.size());
        const long cols_sz = static_cast<long>(bc.cols.size());

        for (int c = 0; c < k; ++c) {
            if (!col_free[c] || in_col[c]) continue;
            bool complete = true;
            for (int r : bc.rows)
                if (!w.bit(r, c)) { complete = false; break; }
            if (!complete) continue;
            const long area = rows_sz * (cols_sz + 1);
            if (area > best_area) { best_area = area; best_is_col = true; best_index = c; }
        }
        for (int r = 0; r < n; ++r) {
            if (!row_free[r] || in_row[r]) continue;
            bool complete = true;
            for (int c : bc.cols)
                if (!w.bit(r, c)) { complete = false; break; }
            if (!complete) continue;
            const long area = (rows_sz + 1) * cols_sz;
            if (area > best_area) { best_area = area; best_is_col = false; best_index = r; }
        }

        if (best_index < 0) break;
        if (best_is_col) { bc.cols.push_back(best_index); in_col[best_index] = 1; }
        else { bc.rows.push_back(best_index); in_row[best_index] = 1; }
    }

    std::sort(bc.rows.begin(), bc.rows.end());
    std::sort(bc.cols.begin(), bc.cols.end());
    return bc;
}

// Links that must go before (rows, cols) can stand as a diagonal block:
// anything from a block row to an outside column or from an outside row to
// a block column. Row-major order.
inline std::vector<std::pair<int, int>> cross_links(const SupportPattern& w, const Biclique& bc) {
    const int n = w.rows(), k = w.cols();
    std::vector<char> in_row(n, 0), in_col(k, 0);
    for (int r : bc.rows) in_row[r] = 1;
    for (int c : bc.cols) in_col[c] = 1;
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j)
            if (w.bit(i, j) && in_row[i] != in_col[j]) out.emplace_back(i, j);
    return out;
}

// Core single-biclique pass. `p0` must already be oriented (rows <= cols)
// and admit a matching covering every row. Returns a structure with
// transposed = false; the caller sets the flag.
inline BlockStructure greedy_single_core(const SupportPattern& p0) {
    const int n = p0.rows(), k = p0.cols();
    SupportPattern w = p0;
    std::vector<char> row_free(n, 1), col_free(k, 1);
    std::vector<Biclique> blocks;
    std::vector<std::pair<int, int>> removed;
    std::set<std::pair<int, int>> burned_seeds;
    int rows_left = n;

    auto commit = [&](const Biclique& bc) {
        for (int r : bc.rows) row_free[r] = 0;
        for (int c : bc.cols) col_free[c] = 0;
        rows_left -= static_cast<int>(bc.rows.size());
        blocks.push_back(bc);
        burned_seeds.clear();
    };

    while (rows_left > 0) {
        // Seed: edge whose row has maximum remaining degree, ties broken by
        // lowest (row, col).
        int seed_row = -1, seed_col = -1, seed_deg = 0;
        for (int i = 0; i < n; ++i) {
            if (!row_free[i]) continue;
            int deg = 0;
            for (int j = 0; j < k; ++j)
                if (col_free[j] && w.bit(i, j)) ++deg;
            if (deg <= seed_deg) continue;
            for (int j = 0; j < k; ++j) {
                if (col_free[j] && w.bit(i, j) && !burned_seeds.count({i, j})) {
                    seed_row = i; seed_col = j; seed_deg = deg;
                    break;
                }
            }
        }
        if (seed_row < 0) break;  // every seed rejected: fall through to singletons

        Biclique bc = grow_biclique(w, row_free, col_free, seed_row, seed_col);
        if (bc.rows.size() > bc.cols.size())
            bc.rows.resize(bc.cols.size());  // keep the lowest rows, release the rest

        // Remove cross links one at a time; abort the block if any removal
        // would kill the last full-rank realization.
        const auto links = cross_links(w, bc);
        std::vector<std::pair<int, int>> done;
        bool ok = true;
        for (const auto& [r, c] : links) {
            w.set_bit(r, c, false);
            if (matching_size(w) != n) {
                w.set_bit(r, c, true);
                ok = false;
                break;
            }
            done.push_back({r, c});
        }
        if (!ok) {
            for (const auto& [r, c] : done) w.set_bit(r, c, true);
            burned_seeds.insert({seed_row, seed_col});
            continue;
        }
        removed.insert(removed.end(), done.begin(), done.end());
        commit(bc);
    }

    if (rows_left > 0) {
        // Unabsorbed rows become singleton blocks along a maximum matching of
        // what is left; the matching invariant guarantees one exists.
        SupportPattern rest(n, k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j)
                rest.set_bit(i, j, row_free[i] && col_free[j] && w.bit(i, j));
        const auto match = max_matching(rest);
        for (int r = 0; r < n; ++r) {
            if (!row_free[r]) continue;
            const int c = match[r];
            if (c < 0) throw std::logic_error("matching invariant violated in fallback");
            for (int j = 0; j < k; ++j) {
                if (j != c && col_free[j] && w.bit(r, j)) {
                    w.set_bit(r, j, false);
                    if (matching_size(w) != n) throw std::logic_error("singleton removal broke matching");
                    removed.emplace_back(r, j);
                }
            }
            for (int i = 0; i < n; ++i) {
                if (i != r && row_free[i] && w.bit(i, c)) {
                    w.set_bit(i, c, false);
                    if (matching_size(w) != n) throw std::logic_error("singleton removal broke matching");
                    removed.emplace_back(i, c);
                }
            }
            Biclique single;
            single.rows.push_back(r);
            single.cols.push_back(c);
            commit(single);
        }
    }

    BlockStructure s;
    for (const auto& bc : blocks) {
        s.blocks.push_back({static_cast<int>(bc.rows.size()), static_cast<int>(bc.cols.size())});
        s.row_perm.insert(s.row_perm.end(), bc.rows.begin(), bc.rows.end());
        s.col_perm.insert(s.col_perm.end(), bc.cols.begin(), bc.cols.end());
    }
    std::vector<char> col_used(k, 0);
    for (int c : s.col_perm) col_used[c] = 1;
    for (int c = 0; c < k; ++c)
        if (!col_used[c]) s.col_perm.push_back(c);  // trailing all-zero columns
    std::sort(removed.begin(), removed.end());
    s.zeroed = std::move(removed);
    return s;
}

inline SupportPattern orient(const SupportPattern& b, bool& transposed) {
    transposed = b.rows() > b.cols();
    return transposed ? b.transposed() : b;
}

inline void require_realizable(const SupportPattern& oriented) {
    if (matching_size(oriented) != oriented.rows())
        throw std::domain_error("no full-rank realization");
}

}  // namespace detail

/// First greedy diagonalizer: grow one biclique at a time to maximal size,
/// zero its cross links (each removal checked to preserve a full-rank
/// realization) and repeat on the remaining graph. Deterministic.
inline BlockStructure greedy_single(const SupportPattern& b, const Field& /*field*/) {
    bool transposed = false;
    const SupportPattern p = detail::orient(b, transposed);
    detail::require_realizable(p);
    BlockStructure s = detail::greedy_single_core(p);
    s.transposed = transposed;
    return s;
}

/// Second greedy diagonalizer: every iteration scores each single link
/// removal by the bound of the structure the remaining pattern would yield
/// (completed by the single-biclique pass) and commits only the best one,
/// stopping when no valid removal improves the bound. Deterministic, and
/// substantially more expensive than greedy_single.
inline BlockStructure greedy_parallel(const SupportPattern& b, const Field& field) {
    bool transposed = false;
    SupportPattern w = detail::orient(b, transposed);
    detail::require_realizable(w);
    const int n = w.rows(), k = w.cols();

    std::vector<std::pair<int, int>> removed;
    BlockStructure best = detail::greedy_single_core(w);
    Rational best_bound = block_diag_bound(best, field);

    for (;;) {
        bool found = false;
        Rational top_score;
        std::pair<int, int> top_link{-1, -1};
        BlockStructure top_structure;

        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < k; ++j) {
                if (!w.bit(i, j)) continue;
                w.set_bit(i, j, false);
                if (matching_size(w) == n) {
                    BlockStructure cand = detail::greedy_single_core(w);
                    Rational score = block_diag_bound(cand, field);
                    if (!found || score > top_score) {
                        found = true;
                        top_score = score;
                        top_link = {i, j};
                        top_structure = std::move(cand);
                    }
                }
                w.set_bit(i, j, true);
            }
        }

        if (!found || top_score <= best_bound) break;
        w.set_bit(top_link.first, top_link.second, false);
        removed.push_back(top_link);
        best = std::move(top_structure);
        best_bound = top_score;
    }

    best.zeroed.insert(best.zeroed.end(), removed.begin(), removed.end());
    std::sort(best.zeroed.begin(), best.zeroed.end());
    best.transposed = transposed;
    return best;
}

/// Non-throwing validity verdict: the structure must satisfy every
/// invariant against `b` and the diagonalized pattern must still admit a
/// full-rank realization.
inline bool verify_structure(const SupportPattern& b, const BlockStructure& s) {
    try {
        return has_full_rank_realization(apply_structure(b, s));
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace fqrank
