#pragma once

// p-adic coefficient arithmetic at finite precision, and the finite quotient
// rings R_{n,k} = (Z/p^k)[u]/(u^n - 1) of the completed group ring of the
// absolute Galois group of F_q. Here u stands for the geometric Frobenius
// generator; higher levels map onto lower ones by the cyclic-group quotient.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zel/ints.hpp"
#include "zel/zetafn.hpp"

namespace zel::coeff {

// unit * p^val with the unit known modulo p^k (relative precision k).
// The exact zero is stored as unit = 0; otherwise gcd(unit, p) = 1.
struct PAdicApprox {
    std::int64_t p = 0;
    int k = 0;
    long val = 0;
    Int unit;

    bool is_zero() const { return unit == 0; }

    static PAdicApprox zero(std::int64_t p, int k);
    static PAdicApprox from_int(const Int& v, std::int64_t p, int k);
    static PAdicApprox from_ratio(const Int& num, const Int& den, std::int64_t p, int k);

    PAdicApprox inv() const; // requires a nonzero value
    friend PAdicApprox operator*(const PAdicApprox& a, const PAdicApprox& b);

    // same valuation and congruent units at the shared precision
    // min(k, o.k); exact zeros agree only with exact zeros
    bool agrees_with(const PAdicApprox& o) const;
};

// element of R_{n,k}: coefficients of 1, u, ..., u^{n-1}, canonical residues
using LevelElt = std::vector<std::uint64_t>;

// inversion of a non-unit; carries the element's image modulo p, which is
// what downstream checks report when they declare a level inconclusive
struct NonUnit : std::runtime_error {
    LevelElt mod_p;
    NonUnit(LevelElt image, const std::string& msg) : std::runtime_error(msg), mod_p(std::move(image)) {}
};

// R_{n,k} = (Z/p^k)[u]/(u^n - 1). Requires p prime and p^k < 2^31 so that
// coefficients stay in machine words; n is the cyclic-group order.
class LevelRing {
  public:
    LevelRing(std::int64_t p, int k, int n);

    std::int64_t p() const { return p_; }
    int k() const { return k_; }
    int n() const { return n_; }
    std::uint64_t modulus() const { return pk_; } // p^k

    LevelElt zero() const;
    LevelElt one() const;
    LevelElt u() const;
    // integer coefficients map into Z/p^k; the power u^j lands on j mod n
    LevelElt from_ipoly(const zetafn::IPoly& poly) const;

    LevelElt add(const LevelElt& a, const LevelElt& b) const;
    LevelElt sub(const LevelElt& a, const LevelElt& b) const;
    LevelElt neg(const LevelElt& a) const;
    LevelElt mul(const LevelElt& a, const LevelElt& b) const;

    LevelElt reduce_mod_p(const LevelElt& a) const;
    bool is_unit(const LevelElt& a) const;
    // nullopt when the element is not invertible
    std::optional<LevelElt> try_invert(const LevelElt& a) const;
    // throwing variant; the NonUnit carries the mod-p image
    LevelElt invert(const LevelElt& a) const;

  private:
    std::int64_t p_;
    int k_;
    int n_;
    std::uint64_t pk_;

    void check(const LevelElt& a) const;
};

// ring homomorphism R_{n',k} -> R_{n,k} induced by Z/n' ->> Z/n: u maps to u,
// coefficients are summed along the fibers. Requires matching (p, k) and
// to.n() | from.n().
LevelElt project(const LevelRing& from, const LevelElt& a, const LevelRing& to);

// image of num/den in the ring when the denominator is a unit; nullopt means
// this level cannot see the function, which callers report as Inconclusive
std::optional<LevelElt> reduce_rational(const zetafn::RationalFn& f, const LevelRing& R);

struct ZeroOrPoleAtOne : std::domain_error {
    using std::domain_error::domain_error;
};

// num(1)/den(1) as a p-adic value at relative precision k; throws
// ZeroOrPoleAtOne when either evaluates to zero over the integers
PAdicApprox eval_at_one(const zetafn::RationalFn& f, std::int64_t p, int k);

} // namespace zel::coeff
