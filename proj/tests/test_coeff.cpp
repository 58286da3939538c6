#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zel/coeff.hpp"

#include <random>

using namespace zel;
using namespace zel::coeff;

namespace {

zetafn::IPoly ip(std::initializer_list<long> v) {
    zetafn::IPoly p;
    for (long x : v) p.emplace_back(x);
    return p;
}

zetafn::RationalFn rf(std::initializer_list<long> num, std::initializer_list<long> den) {
    return {ip(num), ip(den)};
}

LevelElt random_elt(const LevelRing& R, std::mt19937& rng) {
    std::uniform_int_distribution<std::uint64_t> d(0, R.modulus() - 1);
    LevelElt e = R.zero();
    for (auto& c : e) c = d(rng);
    return e;
}

} // namespace

TEST_CASE("p-adic values from integers and ratios") {
    PAdicApprox a = PAdicApprox::from_int(50, 5, 3);
    CHECK(a.val == 2);
    CHECK(a.unit == 2);
    CHECK_FALSE(a.is_zero());

    a = PAdicApprox::from_int(-50, 5, 3);
    CHECK(a.val == 2);
    CHECK(a.unit == 123);

    CHECK(PAdicApprox::from_int(0, 5, 3).is_zero());

    a = PAdicApprox::from_ratio(1, -1, 5, 2);
    CHECK(a.val == 0);
    CHECK(a.unit == 24);

    // 10/4 = 5 * (1/2), and 1/2 is 13 mod 25
    a = PAdicApprox::from_ratio(10, 4, 5, 2);
    CHECK(a.val == 1);
    CHECK(a.unit == 13);

    CHECK(PAdicApprox::from_ratio(0, 7, 5, 2).is_zero());
    CHECK_THROWS_AS(PAdicApprox::from_ratio(1, 0, 5, 2), std::invalid_argument);
    CHECK_THROWS_AS(PAdicApprox::from_int(1, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(PAdicApprox::from_int(1, 5, 0), std::invalid_argument);
}

TEST_CASE("p-adic multiplication and inversion") {
    PAdicApprox a = PAdicApprox::from_int(50, 5, 3);        // 2 * 5^2
    PAdicApprox b = PAdicApprox::from_ratio(1, 5, 5, 3);    // 5^{-1}
    PAdicApprox prod = a * b;
    CHECK(prod.val == 1);
    CHECK(prod.unit == 2);
    CHECK(prod.k == 3);

    // precision drops to the weaker factor
    PAdicApprox c = PAdicApprox::from_int(7, 5, 2);
    CHECK((a * c).k == 2);

    CHECK((a * PAdicApprox::zero(5, 3)).is_zero());
    CHECK_THROWS_AS(a * PAdicApprox::from_int(1, 7, 3), std::invalid_argument);

    PAdicApprox inv = a.inv();
    CHECK(inv.val == -2);
    CHECK(inv.unit == 63); // 2 * 63 = 126 = 1 mod 125
    CHECK((a * inv).agrees_with(PAdicApprox::from_int(1, 5, 3)));
    CHECK_THROWS_AS(PAdicApprox::zero(5, 3).inv(), std::domain_error);
}

TEST_CASE("p-adic agreement at shared precision") {
    PAdicApprox k2{5, 2, 0, 24};
    PAdicApprox k3{5, 3, 0, 124};
    CHECK(k2.agrees_with(k3)); // 124 = 24 mod 25
    CHECK(k3.agrees_with(k2));
    CHECK_FALSE(k2.agrees_with(PAdicApprox{5, 2, 1, 24}));
    CHECK_FALSE(k2.agrees_with(PAdicApprox{7, 2, 0, 24}));
    CHECK(PAdicApprox::zero(5, 2).agrees_with(PAdicApprox::zero(5, 4)));
    CHECK_FALSE(PAdicApprox::zero(5, 2).agrees_with(k2));
}

TEST_CASE("level ring construction and basic arithmetic") {
    LevelRing R(5, 1, 3);
    CHECK(R.modulus() == 5);
    CHECK(R.one() == LevelElt{1, 0, 0});
    CHECK(R.u() == LevelElt{0, 1, 0});
    CHECK(LevelRing(5, 1, 1).u() == LevelRing(5, 1, 1).one());

    // u^4 wraps to u at order 3; coefficients land in Z/5
    CHECK(R.from_ipoly(ip({1, 0, 0, 0, 1})) == LevelElt{1, 1, 0});
    CHECK(R.from_ipoly(ip({1, -2})) == LevelElt{1, 3, 0});
    CHECK(R.from_ipoly(ip({6, -7, 12, 6})) == LevelElt{2, 3, 2}); // 6u^3 wraps into the constant

    CHECK(R.add(R.one(), R.u()) == LevelElt{1, 1, 0});
    CHECK(R.sub(R.zero(), R.one()) == LevelElt{4, 0, 0});
    CHECK(R.neg(R.u()) == LevelElt{0, 4, 0});
    // u * u^2 = 1
    CHECK(R.mul(R.u(), R.mul(R.u(), R.u())) == R.one());

    CHECK_THROWS_AS(LevelRing(4, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(LevelRing(5, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(LevelRing(5, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(LevelRing(2, 31, 1), std::invalid_argument);
    CHECK_NOTHROW(LevelRing(2, 30, 4));
    CHECK_THROWS_AS(R.add(R.one(), LevelElt{1, 0}), std::invalid_argument);
}

TEST_CASE("level ring inversion") {
    LevelRing R(5, 1, 3);
    // frozen: extended euclidean inverse of 1 - 2u modulo (5, u^3 - 1)
    LevelElt inv = R.invert(LevelElt{1, 3, 0});
    CHECK(inv == LevelElt{2, 4, 3});
    CHECK(R.mul(LevelElt{1, 3, 0}, inv) == R.one());

    CHECK(R.invert(R.one()) == R.one());
    CHECK(R.invert(R.u()) == LevelElt{0, 0, 1}); // u^{n-1}

    // lifted to precision 2: the same inverse computed by hand mod 25
    LevelRing R2(5, 2, 3);
    CHECK(R2.invert(LevelElt{1, 23, 0}) == LevelElt{7, 14, 3});

    // deep precision: verify rather than freeze. Note n = 4 would not do:
    // u^4 - 1 splits completely mod 5, so 1 - 2u is a non-unit there.
    LevelRing Rd(5, 6, 3);
    LevelElt a = Rd.from_ipoly(ip({1, -2}));
    CHECK(Rd.mul(a, Rd.invert(a)) == Rd.one());
}

TEST_CASE("non-units carry their mod-p image") {
    LevelRing R(5, 1, 3);
    LevelElt bad = R.from_ipoly(ip({1, -1})); // 1 - u vanishes under augmentation
    CHECK_FALSE(R.is_unit(bad));
    CHECK_FALSE(R.try_invert(bad).has_value());
    try {
        R.invert(bad);
        FAIL("expected NonUnit");
    } catch (const NonUnit& e) {
        CHECK(e.mod_p == LevelElt{1, 4, 0});
    }

    // 1 - u stays a non-unit at every level: it kills the all-ones vector
    for (int n : {1, 2, 4, 6}) {
        LevelRing S(7, 2, n);
        CHECK_FALSE(S.is_unit(S.from_ipoly(ip({1, -1}))));
    }

    CHECK_FALSE(R.is_unit(R.zero()));
}

TEST_CASE("inversion round-trips on random units") {
    std::mt19937 rng(811);
    for (auto [p, k, n] : {std::tuple{5, 2, 6}, {7, 1, 4}, {2, 5, 3}, {3, 3, 12}}) {
        LevelRing R(p, k, n);
        int units = 0;
        for (int iter = 0; iter < 40; ++iter) {
            LevelElt a = random_elt(R, rng);
            auto inv = R.try_invert(a);
            CHECK(inv.has_value() == R.is_unit(a));
            if (inv) {
                ++units;
                CHECK(R.mul(a, *inv) == R.one());
                CHECK(R.mul(*inv, a) == R.one());
            }
        }
        CHECK(units > 0);
    }
}

TEST_CASE("projection to a divisor level") {
    LevelRing R6(5, 1, 6), R3(5, 1, 3), R1(5, 1, 1);
    CHECK(project(R6, R6.u(), R3) == R3.u());
    CHECK(project(R6, R6.from_ipoly(ip({1, 0, 0, 1})), R3) == R3.from_ipoly(ip({2})));
    // augmentation: everything sums into the constant
    CHECK(project(R6, LevelElt{1, 2, 3, 4, 0, 1}, R1) == LevelElt{1});

    CHECK_THROWS_AS(project(R6, R6.one(), LevelRing(5, 1, 4)), std::invalid_argument);
    CHECK_THROWS_AS(project(R6, R6.one(), LevelRing(5, 2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(project(R6, R3.one(), R3), std::invalid_argument);

    // ring homomorphism, and functorial along divisor chains
    std::mt19937 rng(812);
    LevelRing R12(5, 2, 12), S6(5, 2, 6), S3(5, 2, 3);
    for (int iter = 0; iter < 25; ++iter) {
        LevelElt a = random_elt(R12, rng), b = random_elt(R12, rng);
        CHECK(project(R12, R12.mul(a, b), S3) ==
              S3.mul(project(R12, a, S3), project(R12, b, S3)));
        CHECK(project(R12, R12.add(a, b), S3) ==
              S3.add(project(R12, a, S3), project(R12, b, S3)));
        CHECK(project(S6, project(R12, a, S6), S3) == project(R12, a, S3));
    }
    CHECK(project(R12, R12.one(), S3) == S3.one());
}

TEST_CASE("rational functions reduce into level rings") {
    LevelRing R(5, 1, 3);
    auto r = reduce_rational(rf({1}, {1, -2}), R);
    REQUIRE(r.has_value());
    CHECK(*r == LevelElt{2, 4, 3});

    // polynomial part only
    LevelRing R24(5, 2, 4);
    r = reduce_rational(rf({1, 0, 2}, {1}), R24);
    REQUIRE(r.has_value());
    CHECK(*r == LevelElt{1, 0, 2, 0});

    // 1/(1-u) is invisible at every level
    for (auto [p, k, n] : {std::tuple{5, 1, 3}, {7, 2, 6}, {3, 1, 4}})
        CHECK_FALSE(reduce_rational(rf({1}, {1, -1}), LevelRing(p, k, n)).has_value());

    // homomorphism where defined: (1/(1-2u)) * (1+2u^2) = (1+2u^2)/(1-2u);
    // (7, k, 6) would be Inconclusive since u^6 - 1 splits completely mod 7
    for (auto [p, k, n] : {std::tuple{5, 1, 3}, {7, 2, 4}}) {
        LevelRing S(p, k, n);
        auto f = reduce_rational(rf({1}, {1, -2}), S);
        auto g = reduce_rational(rf({1, 0, 2}, {1}), S);
        auto fg = reduce_rational(rf({1, 0, 2}, {1, -2}), S);
        REQUIRE(f.has_value());
        REQUIRE(fg.has_value());
        CHECK(*fg == S.mul(*f, *g));
    }

    // reduction commutes with projection when both levels are defined
    LevelRing R6(5, 1, 6);
    auto at6 = reduce_rational(rf({1}, {1, -2}), R6);
    auto at3 = reduce_rational(rf({1}, {1, -2}), R);
    REQUIRE(at6.has_value());
    REQUIRE(at3.has_value());
    CHECK(project(R6, *at6, R) == *at3);
}

TEST_CASE("evaluation at u = 1") {
    PAdicApprox v = eval_at_one(rf({1}, {1, -2}), 5, 2);
    CHECK(v.val == 0);
    CHECK(v.unit == 24); // the value is -1

    v = eval_at_one(rf({1, 0, 2}, {1}), 5, 1);
    CHECK(v.val == 0);
    CHECK(v.unit == 3);

    // numerator summing to a p-multiple gains valuation
    v = eval_at_one(rf({1, 4}, {1, -2}), 5, 2);
    CHECK(v.val == 1);
    CHECK(v.unit == 24);

    CHECK_THROWS_AS(eval_at_one(rf({1}, {1, -1}), 5, 2), ZeroOrPoleAtOne);
    CHECK_THROWS_AS(eval_at_one(rf({1, -1}, {1}), 5, 2), ZeroOrPoleAtOne);
}
