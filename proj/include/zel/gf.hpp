#pragma once

// Finite fields F_{p^e} at desk scale (p^e <= 2^24, e <= 16).
//
// Elements are coefficient vectors over F_p, constant term first, modulo the
// canonical modulus: the lexicographically smallest monic irreducible of
// degree e under that coefficient order. Fields are interned: make_field
// returns the same object for equal (p, e), so parent identity is pointer
// identity. Embeddings between fields pick, for each (src, dst) pair, the
// lex-smallest root of the source modulus that is compatible with all
// embeddings from proper divisor degrees; that choice makes towers commute.

#include <array>
#include <cstdint>
#include <vector>

#include "zel/ints.hpp"

namespace zel::gf {

inline constexpr int kMaxDeg = 16;
inline constexpr std::uint64_t kMaxSize = std::uint64_t{1} << 24;

class Field;

struct FieldElt {
    const Field* fld = nullptr;
    std::array<std::uint32_t, kMaxDeg> c{}; // constant term first; entries >= deg(fld) are zero

    bool operator==(const FieldElt& o) const { return fld == o.fld && c == o.c; }
    bool operator!=(const FieldElt& o) const { return !(*this == o); }

    FieldElt operator+(const FieldElt& o) const;
    FieldElt operator-(const FieldElt& o) const;
    FieldElt operator*(const FieldElt& o) const;
    FieldElt operator/(const FieldElt& o) const;
    FieldElt operator-() const;
    bool is_zero() const;
};

class Field {
  public:
    std::int64_t ch;                    // characteristic p
    int deg;                            // extension degree e over F_p
    std::uint64_t size;                 // p^e
    std::vector<std::uint32_t> modulus; // e+1 coefficients, constant first, monic

    FieldElt zero() const;
    FieldElt one() const;
    FieldElt gen() const;                  // class of x; equals one() when deg == 1
    FieldElt from_int(const Int& v) const; // v mod p as a constant
    FieldElt make(std::vector<std::uint32_t> coeffs) const;

    // i-th element in lexicographic order on coefficient vectors, 0 <= i < size
    FieldElt element(std::uint64_t i) const;
    std::uint64_t index(const FieldElt& a) const; // inverse of element()

    FieldElt add(const FieldElt& a, const FieldElt& b) const;
    FieldElt sub(const FieldElt& a, const FieldElt& b) const;
    FieldElt mul(const FieldElt& a, const FieldElt& b) const;
    FieldElt div(const FieldElt& a, const FieldElt& b) const;
    FieldElt neg(const FieldElt& a) const;
    FieldElt inv(const FieldElt& a) const;
    FieldElt pow(FieldElt a, std::uint64_t e) const;

    // arithmetic Frobenius x -> x^(p^j); j is reduced mod deg
    FieldElt frobenius(const FieldElt& a, std::uint64_t j) const;

    // fixed generator of the multiplicative group (computed at construction)
    const FieldElt& mult_generator() const { return gen_mult_; }

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

  private:
    friend const Field& make_field(std::int64_t p, int e);
    Field(std::int64_t p, int e);
    FieldElt gen_mult_;
};

// Interned field lookup; validates p prime, 1 <= e <= 16, p^e <= 2^24.
const Field& make_field(std::int64_t p, int e);

// Canonical embedding F_{p^d} -> F_{p^n} for d | n; identity when src == dst.
// Deterministic, cached per (src, dst), coherent along towers.
FieldElt embed(const Field& src, const Field& dst, const FieldElt& a);

// The root of src.modulus in dst chosen by embed (exposed for tests).
FieldElt embed_root(const Field& src, const Field& dst);

// Lex-smallest monic irreducible of degree e over F_p, constant term first,
// including the leading 1 (exposed for tests).
std::vector<std::uint32_t> canonical_modulus(std::int64_t p, int e);

// Trial-division irreducibility test for a monic polynomial over F_p.
bool is_irreducible(const std::vector<std::uint32_t>& poly, std::int64_t p);

} // namespace zel::gf
