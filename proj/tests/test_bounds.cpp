#include <catch2/catch_amalgamated.hpp>

#include <fqrank/bounds.hpp>

#include "brute_force.hpp"

using namespace fqrank;

namespace {

Rational brute(const SupportPattern& p, const Field& f) {
    const auto [hits, total] = testutil::brute_force_full_rank_count(p, f);
    return Rational(hits, total);
}

}  // namespace

TEST_CASE("full-weight probability anchors") {
    const Field f2(2), f3(3), f7(7);
    CHECK(full_weight_prob(2, 2, f2) == Rational(3, 8));    // 6 of 16 binary 2x2
    CHECK(full_weight_prob(3, 3, f2) == Rational(21, 64));  // 168 of 512
    CHECK(full_weight_prob(2, 3, f2) == Rational(21, 32));
    CHECK(full_weight_prob(1, 1, f7) == Rational(6, 7));
    CHECK(full_weight_prob(3, 2, f3) == full_weight_prob(2, 3, f3));  // transpose orientation
    CHECK_THROWS_AS(full_weight_prob(0, 2, f2), std::invalid_argument);
}

TEST_CASE("full-weight probability matches enumeration for all n,k <= 3, q in {2,3}") {
    const Field f2(2), f3(3);
    for (const Field* f : {&f2, &f3})
        for (int n = 1; n <= 3; ++n)
            for (int k = 1; k <= 3; ++k)
                REQUIRE(full_weight_prob(n, k, *f) == brute(SupportPattern::full(n, k), *f));
}

TEST_CASE("ho bound") {
    const Field f2(2);

    const auto ident = ho_bound(SupportPattern::identity(3), f2);
    REQUIRE(ident.has_value());
    CHECK(*ident == Rational(1, 8));
    CHECK(*ident == brute(SupportPattern::identity(3), f2));  // equality at the identity

    const auto full = ho_bound(SupportPattern::full(2, 2), f2);
    REQUIRE(full.has_value());
    CHECK(*full == Rational(1, 4));
    CHECK(*full < brute(SupportPattern::full(2, 2), f2));  // strictly looser than 3/8

    CHECK_FALSE(ho_bound(SupportPattern::from_rows({"11", "00"}), f2).has_value());

    // rectangular orientation uses min(n,k)
    const auto wide = ho_bound(SupportPattern::full(2, 5), f2);
    REQUIRE(wide.has_value());
    CHECK(*wide == Rational(1, 4));
}

TEST_CASE("block-diagonal bound") {
    const Field f2(2), f3(3);

    BlockStructure s;
    s.blocks = {{1, 2}, {1, 1}};
    CHECK(block_diag_bound(s, f2) == Rational(3, 8));
    CHECK(block_diag_bound(s, f2) == brute(SupportPattern::from_rows({"110", "001"}), f2));

    BlockStructure single;
    single.blocks = {{2, 3}};
    CHECK(block_diag_bound(single, f2) == full_weight_prob(2, 3, f2));

    BlockStructure singletons;
    singletons.blocks = {{1, 1}, {1, 1}, {1, 1}};
    CHECK(block_diag_bound(singletons, f3) == independence_floor(f3, 3));  // floor met exactly

    BlockStructure bad;
    bad.blocks = {{2, 1}};
    CHECK_THROWS_AS(block_diag_bound(bad, f2), std::invalid_argument);

    BlockStructure uncovered;
    uncovered.blocks = {{1, 1}};
    uncovered.row_perm = {0, 1};
    uncovered.col_perm = {0, 1};
    CHECK_THROWS_AS(block_diag_bound(uncovered, f2), std::invalid_argument);
}

TEST_CASE("block bound never falls below the (1-1/q)^n floor") {
    const Field f2(2), f5(5);
    // every composition of n = 4 rows into blocks with cols >= rows
    for (const Field* f : {&f2, &f5}) {
        for (int a = 1; a <= 4; ++a) {
            for (int ka = a; ka <= 5; ++ka) {
                for (int b = 0; b <= 4 - a; ++b) {
                    BlockStructure s;
                    s.blocks.push_back({a, ka});
                    int covered = a;
                    if (b > 0) {
                        s.blocks.push_back({b, b + 1});
                        covered += b;
                    }
                    if (covered < 4) s.blocks.push_back({4 - covered, 4 - covered});
                    REQUIRE(block_diag_bound(s, *f) >= independence_floor(*f, 4));
                }
            }
        }
    }
}

TEST_CASE("upper bound") {
    const Field f2(2);
    CHECK(upper_bound(SupportPattern::full(2, 3), f2) == Rational(21, 32));
    CHECK(upper_bound(SupportPattern::full(2, 3), f2) == brute(SupportPattern::full(2, 3), f2));

    // strict for the 2x2 identity: 1/4 exact vs 3/8
    CHECK(upper_bound(SupportPattern::identity(2), f2) == Rational(3, 8));
    CHECK(brute(SupportPattern::identity(2), f2) == Rational(1, 4));

    // 1 x k free row
    CHECK(upper_bound(SupportPattern::full(1, 4), f2) == Rational(15, 16));

    // independent of the pattern interior
    CHECK(upper_bound(SupportPattern::identity(3), f2) == upper_bound(SupportPattern::full(3, 3), f2));
}

TEST_CASE("upper bound dominates enumeration on every 2x2 pattern") {
    const Field f2(2), f3(3);
    for (const Field* f : {&f2, &f3}) {
        for (std::uint64_t mask = 0; mask < 16; ++mask) {
            const auto p = SupportPattern::from_mask(2, 2, mask);
            REQUIRE(brute(p, *f) <= upper_bound(p, *f));
        }
    }
}

TEST_CASE("rational rendering") {
    CHECK(fraction_str(Rational(3, 8)) == "3/8");
    CHECK(fraction_str(Rational(1)) == "1/1");
    CHECK(decimal_str(Rational(3, 8)) == "0.375");
    CHECK(decimal_str(Rational(21, 64)) == "0.328125");
    CHECK(decimal_str(Rational(1, 3)) == "0.333333333333");
    CHECK(to_double(Rational(1, 2)) == 0.5);

    // huge power-of-q denominators stay finite through the wide float path
    const Field f2(2);
    Rational tiny = independence_floor(f2, 5000);
    CHECK(to_double(tiny) >= 0.0);
    CHECK(to_double(Rational(1) - tiny) <= 1.0);
}
