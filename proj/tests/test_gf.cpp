#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zel/gf.hpp"

#include <set>
#include <vector>

using namespace zel;
using namespace zel::gf;

namespace {
std::vector<std::uint32_t> coeffs_of(const FieldElt& a, int deg) {
    return std::vector<std::uint32_t>(a.c.begin(), a.c.begin() + deg);
}
} // namespace

TEST_CASE("canonical moduli match the constant-first lex order") {
    // frozen from an independent enumeration oracle
    CHECK(canonical_modulus(2, 1) == std::vector<std::uint32_t>{0, 1});
    CHECK(canonical_modulus(2, 2) == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(canonical_modulus(2, 3) == std::vector<std::uint32_t>{1, 0, 1, 1});
    CHECK(canonical_modulus(2, 4) == std::vector<std::uint32_t>{1, 0, 0, 1, 1});
    CHECK(canonical_modulus(3, 1) == std::vector<std::uint32_t>{0, 1});
    CHECK(canonical_modulus(3, 2) == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(canonical_modulus(5, 2) == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(canonical_modulus(7, 2) == std::vector<std::uint32_t>{1, 0, 1});
}

TEST_CASE("irreducibility by trial division") {
    CHECK(is_irreducible({1, 1, 1}, 2));       // x^2+x+1
    CHECK_FALSE(is_irreducible({1, 0, 1}, 2)); // x^2+1 = (x+1)^2
    CHECK_FALSE(is_irreducible({0, 1, 1}, 2)); // x^2+x
    CHECK(is_irreducible({1, 0, 1}, 3));
    CHECK_FALSE(is_irreducible({2, 0, 1}, 3)); // x^2+2 = x^2-1
    // every field modulus passes its own invariant
    for (auto [p, e] : {std::pair{2, 8}, {3, 4}, {5, 3}, {13, 2}})
        CHECK(is_irreducible(make_field(p, e).modulus, p));
}

TEST_CASE("make_field validates and interns") {
    CHECK(&make_field(2, 2) == &make_field(2, 2));
    CHECK(make_field(2, 4).size == 16);
    CHECK(make_field(3, 2).size == 9);
    CHECK_THROWS_AS(make_field(4, 1), std::invalid_argument);  // not prime
    CHECK_THROWS_AS(make_field(2, 0), std::invalid_argument);  // degree too small
    CHECK_THROWS_AS(make_field(2, 17), std::invalid_argument); // degree too large
    CHECK_THROWS_AS(make_field(5, 11), std::invalid_argument); // 5^11 > 2^24
}

TEST_CASE("F_4 multiplication table around the generator") {
    const Field& F4 = make_field(2, 2);
    const FieldElt g = F4.gen();
    CHECK(F4.mul(g, g) == F4.make({1, 1})); // g^2 = g + 1
    CHECK(F4.pow(g, 3) == F4.one());
    CHECK(F4.add(g, g) == F4.zero());
}

TEST_CASE("field axioms over all pairs of small fields") {
    for (auto [p, e] : {std::pair{2, 3}, {3, 2}, {5, 1}}) {
        const Field& F = make_field(p, e);
        for (std::uint64_t i = 0; i < F.size; ++i)
            for (std::uint64_t j = 0; j < F.size; ++j) {
                FieldElt a = F.element(i), b = F.element(j);
                CHECK(a + b == b + a);
                CHECK(a * b == b * a);
                CHECK((a + b) * a == a * a + b * a);
                if (!b.is_zero()) CHECK((a / b) * b == a);
            }
    }
}

TEST_CASE("associativity sampled on a larger field") {
    const Field& F = make_field(2, 10);
    for (std::uint64_t i = 0; i < 60; ++i) {
        FieldElt a = F.element((i * 733) % F.size);
        FieldElt b = F.element((i * 577 + 11) % F.size);
        FieldElt c = F.element((i * 919 + 5) % F.size);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a + b) + c == a + (b + c));
    }
}

TEST_CASE("frobenius is additive and has order deg") {
    for (auto [p, e] : {std::pair{2, 4}, {3, 2}, {2, 10}}) {
        const Field& F = make_field(p, e);
        const bool full = F.size <= 64;
        const std::uint64_t step = full ? 1 : 37;
        for (std::uint64_t i = 0; i < F.size; i += step)
            for (std::uint64_t j = 0; j < F.size; j += step) {
                FieldElt a = F.element(i), b = F.element(j);
                CHECK(F.frobenius(a + b, 1) == F.frobenius(a, 1) + F.frobenius(b, 1));
            }
        for (std::uint64_t i = 0; i < F.size; i += step) {
            FieldElt a = F.element(i);
            CHECK(F.frobenius(a, e) == a);                         // full orbit closes
            CHECK(F.frobenius(a, 1) == F.pow(a, std::uint64_t(p))); // definition
        }
        CHECK(F.frobenius(F.from_int(1), 1) == F.one());
    }
}

TEST_CASE("multiplicative group: pow(a, q-1) = 1 and inverses") {
    for (auto [p, e] : {std::pair{2, 4}, {3, 2}, {2, 3}, {5, 2}}) {
        const Field& F = make_field(p, e);
        for (std::uint64_t i = 1; i < F.size; ++i) {
            FieldElt a = F.element(i);
            CHECK(F.pow(a, F.size - 1) == F.one());
            CHECK(F.mul(a, F.inv(a)) == F.one());
        }
        CHECK_THROWS_AS(F.inv(F.zero()), std::domain_error);
    }
}

TEST_CASE("mult_generator has full order") {
    for (auto [p, e] : {std::pair{2, 4}, {3, 2}, {7, 1}}) {
        const Field& F = make_field(p, e);
        std::uint64_t m = F.size - 1;
        for (std::uint64_t ell = 2; ell <= m; ++ell) {
            if (m % ell) continue;
            CHECK(F.pow(F.mult_generator(), m / ell) != F.one());
            while (m % ell == 0) m /= ell;
        }
        CHECK(F.pow(F.mult_generator(), F.size - 1) == F.one());
    }
}

TEST_CASE("enumeration is a lex-ordered bijection") {
    const Field& F = make_field(3, 2);
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<std::uint32_t> prev;
    for (std::uint64_t i = 0; i < F.size; ++i) {
        FieldElt a = F.element(i);
        CHECK(F.index(a) == i);
        auto cs = coeffs_of(a, F.deg);
        CHECK(seen.insert(cs).second);
        if (i) CHECK(prev < cs); // lexicographic on (c0, c1, ...)
        prev = cs;
    }
    CHECK(F.element(0) == F.zero());
    CHECK_THROWS_AS(F.element(F.size), std::out_of_range);
}

TEST_CASE("embed: identity, unital, ring homomorphism") {
    const Field& F4 = make_field(2, 2);
    const Field& F16 = make_field(2, 4);
    CHECK(embed(F4, F4, F4.gen()) == F4.gen()); // identity embedding
    CHECK(embed(F4, F16, F4.one()) == F16.one());
    CHECK(embed(F4, F16, F4.zero()) == F16.zero());
    for (std::uint64_t i = 0; i < 4; ++i)
        for (std::uint64_t j = 0; j < 4; ++j) {
            FieldElt a = F4.element(i), b = F4.element(j);
            CHECK(embed(F4, F16, a + b) == embed(F4, F16, a) + embed(F4, F16, b));
            CHECK(embed(F4, F16, a * b) == embed(F4, F16, a) * embed(F4, F16, b));
        }
    CHECK_THROWS_AS(embed(F16, F4, F16.one()), std::invalid_argument); // 4 does not divide 2
    CHECK_THROWS_AS(embed(make_field(3, 1), F4, make_field(3, 1).one()), std::invalid_argument);
}

TEST_CASE("embed(F_4, F_16, g) has multiplicative order 3") {
    const Field& F4 = make_field(2, 2);
    const Field& F16 = make_field(2, 4);
    FieldElt im = embed(F4, F16, F4.gen());
    CHECK(F16.pow(im, 3) == F16.one());
    CHECK(im != F16.one());
    CHECK(!im.is_zero());
}

TEST_CASE("embed root satisfies the source modulus") {
    for (auto [s, d] : {std::pair{2, 4}, {2, 8}, {4, 8}, {2, 12}, {6, 12}}) {
        const Field& S = make_field(2, s);
        const Field& D = make_field(2, d);
        FieldElt r = embed_root(S, D);
        FieldElt acc = D.zero();
        for (int i = S.deg; i >= 0; --i) acc = acc * r + D.from_int(S.modulus[i]);
        CHECK(acc.is_zero());
    }
}

TEST_CASE("tower coherence across divisor chains") {
    // 2 | 4 | 8, and the diamond 2 | {4,6} | 12
    const Field& F4 = make_field(2, 2);
    const Field& F16 = make_field(2, 4);
    const Field& F256 = make_field(2, 8);
    const Field& F64 = make_field(2, 6);
    const Field& F4096 = make_field(2, 12);
    for (std::uint64_t i = 0; i < 4; ++i) {
        FieldElt a = F4.element(i);
        CHECK(embed(F16, F256, embed(F4, F16, a)) == embed(F4, F256, a));
        CHECK(embed(F16, F4096, embed(F4, F16, a)) == embed(F4, F4096, a));
        CHECK(embed(F64, F4096, embed(F4, F64, a)) == embed(F4, F4096, a));
    }
    const Field& F9 = make_field(3, 2);
    const Field& F81 = make_field(3, 4);
    const Field& F6561 = make_field(3, 8);
    for (std::uint64_t i = 0; i < 9; ++i) {
        FieldElt a = F9.element(i);
        CHECK(embed(F81, F6561, embed(F9, F81, a)) == embed(F9, F6561, a));
    }
}

TEST_CASE("embed commutes with frobenius") {
    const Field& F8 = make_field(2, 3);
    const Field& F64 = make_field(2, 6);
    for (std::uint64_t i = 0; i < 8; ++i) {
        FieldElt a = F8.element(i);
        CHECK(embed(F8, F64, F8.frobenius(a, 1)) == F64.frobenius(embed(F8, F64, a), 1));
        // frobenius iterated src.deg times fixes the image subfield
        CHECK(F64.frobenius(embed(F8, F64, a), 3) == embed(F8, F64, a));
    }
}

TEST_CASE("mismatched parents are rejected") {
    const Field& F4 = make_field(2, 2);
    const Field& F16 = make_field(2, 4);
    CHECK_THROWS_AS((void)(F4.one() + F16.one()), std::invalid_argument);
}
