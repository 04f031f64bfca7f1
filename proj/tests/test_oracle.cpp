#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include <fqrank/bounds.hpp>
#include <fqrank/oracle.hpp>

using namespace fqrank;

TEST_CASE("exact enumeration anchors") {
    const Field f2(2);

    const auto full22 = exact_prob(SupportPattern::full(2, 2), f2);
    CHECK(full22.raw_fraction() == "6/16");  // unreduced count over q^wt
    CHECK(full22.value() == Rational(3, 8));

    const auto ident3 = exact_prob(SupportPattern::identity(3), f2);
    CHECK(ident3.raw_fraction() == "1/8");
    CHECK(ident3.value() == Rational(1, 8));

    const auto full33 = exact_prob(SupportPattern::full(3, 3), f2);
    CHECK(full33.raw_fraction() == "168/512");
    CHECK(full33.value() == Rational(21, 64));

    CHECK(exact_prob(SupportPattern(2, 2), f2).value() == 0);  // empty support: zero matrix only
}

TEST_CASE("exact agrees with the closed form for all full patterns n,k <= 3, q in {2,3}") {
    const Field f2(2), f3(3);
    for (const Field* f : {&f2, &f3})
        for (int n = 1; n <= 3; ++n)
            for (int k = 1; k <= 3; ++k)
                REQUIRE(exact_prob(SupportPattern::full(n, k), *f).value() ==
                        full_weight_prob(n, k, *f));
}

TEST_CASE("exact is invariant under permutation and transpose") {
    const Field f3(3);
    const auto p = SupportPattern::from_rows({"110", "011", "100"});
    const Rational v = exact_prob(p, f3).value();
    CHECK(exact_prob(p.transposed(), f3).value() == v);
    CHECK(exact_prob(p.permuted({2, 0, 1}, {1, 2, 0}), f3).value() == v);
}

TEST_CASE("enumeration budget is enforced") {
    const Field f2(2);
    CHECK_THROWS_AS(exact_prob(SupportPattern::full(6, 5), f2), BudgetExceeded);  // 2^30
    CHECK_THROWS_AS(exact_prob(SupportPattern::full(2, 2), f2, 3), BudgetExceeded);
    CHECK_NOTHROW(exact_prob(SupportPattern::full(2, 2), f2, 4));
    CHECK_THROWS_AS(exact_prob(SupportPattern::full(2, 2), f2, 63), std::invalid_argument);
    CHECK_THROWS_MATCHES(exact_prob(SupportPattern::full(6, 5), f2), BudgetExceeded,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("Monte Carlo")));
}

TEST_CASE("monte carlo basics") {
    const Field f2(2);

    const auto zero = mc_prob(SupportPattern(2, 2), f2, 1000, 7);
    CHECK(zero.numerator == 0);
    CHECK(zero.standard_error == 0.0);

    const auto bit = mc_prob(SupportPattern::full(1, 1), f2, 1000000, 11);
    CHECK(std::abs(bit.estimate() - 0.5) <= 3 * bit.standard_error);

    const auto cube = mc_prob(SupportPattern::full(3, 3), f2, 1000000, 13);
    const double exact = to_double(Rational(21, 64));
    CHECK(std::abs(cube.estimate() - exact) <= 3 * cube.standard_error);

    CHECK_THROWS_AS(mc_prob(SupportPattern::full(1, 1), f2, 0, 1), std::invalid_argument);
}

TEST_CASE("monte carlo is bit-identical for a fixed seed") {
    const Field f4(2, 2);
    const auto p = SupportPattern::from_rows({"110", "011"});
    const auto a = mc_prob(p, f4, 20000, 99);
    const auto b = mc_prob(p, f4, 20000, 99);
    CHECK(a.numerator == b.numerator);
    CHECK(a.standard_error == b.standard_error);
    const auto c = mc_prob(p, f4, 20000, 100);
    CHECK(a.numerator != c.numerator);  // different stream
}

TEST_CASE("3-sigma interval covers the truth for most seeds") {
    const Field f2(2);
    const auto p = SupportPattern::full(2, 2);
    const double exact = to_double(Rational(3, 8));
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = mc_prob(p, f2, 100000, seed);
        if (std::abs(r.estimate() - exact) <= 3 * r.standard_error) ++inside;
    }
    CHECK(inside >= 18);
}

TEST_CASE("zeroing monotonicity on every 2x2 pair and 2x3 single zeroings") {
    const Field f2(2), f3(3);

    for (const Field* f : {&f2, &f3}) {
        std::map<std::uint64_t, Rational> memo;
        for (std::uint64_t mask = 0; mask < 16; ++mask)
            memo.emplace(mask, exact_prob(SupportPattern::from_mask(2, 2, mask), *f).value());
        for (std::uint64_t a = 0; a < 16; ++a)
            for (std::uint64_t b = 0; b < 16; ++b)
                if (a != b && (a & b) == a)  // a's support strictly inside b's
                    REQUIRE(memo[a] <= memo[b]);
    }

    for (std::uint64_t mask = 0; mask < (1ULL << 6); ++mask) {
        const auto b = SupportPattern::from_mask(2, 3, mask);
        const Rational vb = exact_prob(b, f2).value();
        for (int t = 0; t < 6; ++t)
            if ((mask >> t) & 1)
                REQUIRE(exact_prob(SupportPattern::from_mask(2, 3, mask & ~(1ULL << t)), f2)
                            .value() <= vb);
    }
}
