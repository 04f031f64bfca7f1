#include <catch2/catch_amalgamated.hpp>

#include <fqrank/diagonalize.hpp>
#include <fqrank/oracle.hpp>

using namespace fqrank;

namespace {

const std::vector<std::vector<std::string>> kCorpus = {
    {"1"},
    {"10", "01"},
    {"11", "11"},
    {"11", "10"},
    {"110", "001"},
    {"111", "110", "100"},
    {"101", "011", "110"},
    {"1100", "1111", "0011", "1111"},
    {"10", "10", "01"},  // tall: forces the transpose orientation
    {"1111"},
};

}  // namespace

TEST_CASE("identity pattern splits into singleton blocks") {
    const Field f2(2), f5(5);
    for (const Field* f : {&f2, &f5}) {
        for (int n : {1, 2, 4}) {
            for (auto algo : {greedy_single, greedy_parallel}) {
                const BlockStructure s = algo(SupportPattern::identity(n), *f);
                REQUIRE(static_cast<int>(s.blocks.size()) == n);
                for (const auto& b : s.blocks) CHECK(b == BlockDims{1, 1});
                CHECK(s.zeroed.empty());
                CHECK(block_diag_bound(s, *f) == independence_floor(*f, n));
            }
        }
    }
}

TEST_CASE("full pattern stays one block") {
    const Field f3(3);
    for (auto algo : {greedy_single, greedy_parallel}) {
        const BlockStructure s = algo(SupportPattern::full(3, 4), f3);
        REQUIRE(s.blocks.size() == 1);
        CHECK(s.blocks[0] == BlockDims{3, 4});
        CHECK(s.zeroed.empty());
        CHECK(block_diag_bound(s, f3) == full_weight_prob(3, 4, f3));
    }
}

TEST_CASE("existing block structure is recovered, bound matches exact value") {
    const Field f2(2);
    const auto p = SupportPattern::from_rows({"110", "001"});
    for (auto algo : {greedy_single, greedy_parallel}) {
        const BlockStructure s = algo(p, f2);
        CHECK(block_diag_bound(s, f2) == Rational(3, 8));
        CHECK(block_diag_bound(s, f2) == exact_prob(p, f2).value());
    }

    // the same pattern scrambled by row/column permutations
    const auto scrambled = p.permuted({1, 0}, {2, 0, 1});
    for (auto algo : {greedy_single, greedy_parallel})
        CHECK(block_diag_bound(algo(scrambled, f2), f2) == Rational(3, 8));
}

TEST_CASE("strictly tighter than the (1-1/q)^n bound on a block pattern") {
    const Field f2(2);
    const auto p = SupportPattern::from_rows({"110", "001"});
    const Rational block = block_diag_bound(greedy_single(p, f2), f2);
    const auto ho = ho_bound(p, f2);
    REQUIRE(ho.has_value());
    CHECK(block == Rational(3, 8));
    CHECK(*ho == Rational(1, 4));
    CHECK(block > *ho);
}

TEST_CASE("curated 4x4 pattern: both bounds are sound against enumeration") {
    const Field f2(2);
    const auto p = SupportPattern::from_rows({"1100", "1111", "0011", "1111"});
    const Rational exact = exact_prob(p, f2).value();
    REQUIRE(exact == Rational(27, 128));  // 864 of 4096 realizations

    const BlockStructure ss = greedy_single(p, f2);
    const BlockStructure sp = greedy_parallel(p, f2);
    const Rational bs = block_diag_bound(ss, f2);
    const Rational bp = block_diag_bound(sp, f2);
    INFO("single=" << fraction_str(bs) << " parallel=" << fraction_str(bp)
                   << " exact=" << fraction_str(exact));
    CHECK(verify_structure(p, ss));
    CHECK(verify_structure(p, sp));
    CHECK(bs <= exact);
    CHECK(bp <= exact);
}

TEST_CASE("tall patterns are handled through the transpose orientation") {
    const Field f2(2);
    const auto tall = SupportPattern::from_rows({"10", "10", "01"});
    for (auto algo : {greedy_single, greedy_parallel}) {
        const BlockStructure s = algo(tall, f2);
        CHECK(s.transposed);
        CHECK(verify_structure(tall, s));
        CHECK(block_diag_bound(s, f2) <= exact_prob(tall, f2).value());
    }
}

TEST_CASE("corpus: structures verify, bounds are sound, floors hold, runs are deterministic") {
    const Field f2(2), f3(3);
    for (const Field* f : {&f2, &f3}) {
        for (const auto& rows : kCorpus) {
            const auto p = SupportPattern::from_rows(rows);
            INFO("pattern " << format_pattern(p) << " q=" << f->order());
            const Rational exact = exact_prob(p, *f).value();
            const int n_oriented = std::min(p.rows(), p.cols());
            for (auto algo : {greedy_single, greedy_parallel}) {
                const BlockStructure s = algo(p, *f);
                REQUIRE(verify_structure(p, s));
                const Rational bound = block_diag_bound(s, *f);
                REQUIRE(bound <= exact);
                REQUIRE(bound >= independence_floor(*f, n_oriented));
                REQUIRE(algo(p, *f) == s);  // deterministic
            }
        }
    }
}

TEST_CASE("soundness is exhaustive on 2x2 and 2x3 patterns") {
    const Field f2(2), f3(3);
    for (const Field* f : {&f2, &f3}) {
        for (int n = 2; n <= 2; ++n) {
            for (int k = 2; k <= 3; ++k) {
                for (std::uint64_t mask = 0; mask < (1ULL << (n * k)); ++mask) {
                    const auto p = SupportPattern::from_mask(n, k, mask);
                    if (!has_full_rank_realization(p)) continue;
                    const Rational exact = exact_prob(p, *f).value();
                    for (auto algo : {greedy_single, greedy_parallel}) {
                        const BlockStructure s = algo(p, *f);
                        REQUIRE(verify_structure(p, s));
                        REQUIRE(block_diag_bound(s, *f) <= exact);
                    }
                }
            }
        }
    }
}

TEST_CASE("precondition failures") {
    const Field f2(2);
    const auto dead = SupportPattern::from_rows({"11", "00"});
    CHECK_THROWS_AS(greedy_single(dead, f2), std::domain_error);
    CHECK_THROWS_AS(greedy_parallel(dead, f2), std::domain_error);
}

TEST_CASE("verify_structure rejects broken structures") {
    const Field f2(2);
    const auto p = SupportPattern::full(2, 2);
    const BlockStructure good = greedy_single(p, f2);
    CHECK(verify_structure(p, good));

    BlockStructure uncovered = good;
    uncovered.blocks = {{1, 2}};  // covers one of two rows
    CHECK_FALSE(verify_structure(p, uncovered));

    BlockStructure dead_zero = good;
    dead_zero.zeroed.push_back({0, 0});
    CHECK_FALSE(verify_structure(SupportPattern::from_rows({"01", "10"}), dead_zero));

    // zeroing a position that is already zero
    const auto ident = SupportPattern::identity(2);
    BlockStructure z;
    z.row_perm = {0, 1};
    z.col_perm = {0, 1};
    z.blocks = {{1, 1}, {1, 1}};
    z.zeroed = {{0, 1}};
    CHECK_FALSE(verify_structure(ident, z));
}
