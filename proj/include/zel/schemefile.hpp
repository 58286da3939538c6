#pragma once

// Scheme definition files: a small line-oriented text format describing a
// scheme over a finite field by equations in x0..x4.
//
//   # comment to end of line
//   base_char 2
//   base_deg 1
//   ambient projective 2
//   equation x1^2*x2 + x1*x2^2 + x0^3
//   inequation x0          (affine ambients only)
//
// base_char, base_deg, and ambient appear exactly once; equation and
// inequation may repeat. A polynomial is a signed sum of terms; a term is
// integer and variable-power factors joined by '*'. Integer coefficients are
// reduced into the base field. Parse errors carry 1-based line and column.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "zel/variety.hpp"

namespace zel::schemefile {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int column_);
};

// parse and validate; the base field is interned via gf::make_field and the
// result passes variety::make_scheme (whose semantic errors propagate as
// std::invalid_argument)
variety::SchemeSpec parse_scheme(const std::string& text);

// reads the file, then parse_scheme; missing or unreadable files throw
// std::runtime_error naming the path
variety::SchemeSpec load_scheme_file(const std::string& path);

// canonical text form of a scheme: fixed header plus each polynomial rendered
// from its canonical term order, with equation lists sorted. Two presentations
// of the same scheme serialize identically, so this is the cache identity.
std::string canonical_serialization(const variety::SchemeSpec& s);

// FNV-1a, 64-bit
std::uint64_t fnv1a64(std::string_view bytes);

// fnv1a64 of the canonical serialization
std::uint64_t digest(const variety::SchemeSpec& s);

} // namespace zel::schemefile
