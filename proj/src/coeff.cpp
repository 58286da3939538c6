#include "zel/coeff.hpp"

#include <algorithm>

namespace zel::coeff {

namespace {

void check_pk(std::int64_t p, int k) {
    if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("coefficient prime must be prime");
    if (k < 1) throw std::invalid_argument("precision exponent must be >= 1");
}

Int unit_inverse(const Int& u, std::int64_t p, int k, const Int& pk) {
    // u coprime to p, so u^(phi(p^k) - 1) inverts it
    Int phi = ipow(Int(p), static_cast<unsigned>(k - 1)) * (p - 1);
    return boost::multiprecision::powm(u, phi - 1, pk);
}

} // namespace

PAdicApprox PAdicApprox::zero(std::int64_t p, int k) {
    check_pk(p, k);
    return {p, k, 0, Int(0)};
}

PAdicApprox PAdicApprox::from_int(const Int& v, std::int64_t p, int k) {
    check_pk(p, k);
    if (v == 0) return zero(p, k);
    long val = val_p(v, p);
    Int unit = imod(v / ipow(Int(p), static_cast<unsigned>(val)), ipow(Int(p), static_cast<unsigned>(k)));
    return {p, k, val, unit};
}

PAdicApprox PAdicApprox::from_ratio(const Int& num, const Int& den, std::int64_t p, int k) {
    check_pk(p, k);
    if (den == 0) throw std::invalid_argument("PAdicApprox: zero denominator");
    if (num == 0) return zero(p, k);
    const long val = val_p(num, p) - val_p(den, p);
    const Int pk = ipow(Int(p), static_cast<unsigned>(k));
    const Int un = imod(num / ipow(Int(p), static_cast<unsigned>(val_p(num, p))), pk);
    const Int ud = imod(den / ipow(Int(p), static_cast<unsigned>(val_p(den, p))), pk);
    return {p, k, val, imod(un * unit_inverse(ud, p, k, pk), pk)};
}

PAdicApprox PAdicApprox::inv() const {
    if (is_zero()) throw std::domain_error("PAdicApprox: inverse of zero");
    const Int pk = ipow(Int(p), static_cast<unsigned>(k));
    return {p, k, -val, unit_inverse(unit, p, k, pk)};
}

PAdicApprox operator*(const PAdicApprox& a, const PAdicApprox& b) {
    if (a.p != b.p) throw std::invalid_argument("PAdicApprox: mixed primes");
    const int k = std::min(a.k, b.k);
    if (a.is_zero() || b.is_zero()) return PAdicApprox::zero(a.p, k);
    const Int pk = ipow(Int(a.p), static_cast<unsigned>(k));
    return {a.p, k, a.val + b.val, imod(a.unit * b.unit, pk)};
}

bool PAdicApprox::agrees_with(const PAdicApprox& o) const {
    if (p != o.p) return false;
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    if (val != o.val) return false;
    const Int pk = ipow(Int(p), static_cast<unsigned>(std::min(k, o.k)));
    return imod(unit, pk) == imod(o.unit, pk);
}

namespace {

// dense F_p polynomials for the mod-p part of inversion, p < 2^31
using FPoly = std::vector<std::uint64_t>;

void ftrim(FPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t fpow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

// a - q*b for the euclidean step; returns remainder, accumulating the
// quotient action on the cofactor pair
void fdivstep(FPoly& r0, FPoly& a0, const FPoly& r1, const FPoly& a1, std::uint64_t p) {
    const std::uint64_t lead_inv = fpow(r1.back(), p - 2, p);
    while (r0.size() >= r1.size() && !r0.empty()) {
        const std::uint64_t c = r0.back() * lead_inv % p;
        const std::size_t shift = r0.size() - r1.size();
        for (std::size_t i = 0; i < r1.size(); ++i)
            r0[shift + i] = (r0[shift + i] + (p - c) * r1[i]) % p;
        if (a0.size() < a1.size() + shift) a0.resize(a1.size() + shift, 0);
        for (std::size_t i = 0; i < a1.size(); ++i)
            a0[shift + i] = (a0[shift + i] + (p - c) * a1[i]) % p;
        ftrim(r0);
    }
}

// inverse of f modulo u^n - 1 over F_p, or nullopt when gcd(f, u^n-1) != 1
std::optional<FPoly> fp_cyclic_inverse(FPoly f, int n, std::uint64_t p) {
    ftrim(f);
    if (f.empty()) return std::nullopt;
    FPoly r0(static_cast<std::size_t>(n) + 1, 0); // u^n - 1
    r0[0] = p - 1;
    r0[static_cast<std::size_t>(n)] = 1;
    FPoly r1 = f;
    FPoly a0{0}, a1{1};
    while (!r1.empty()) {
        fdivstep(r0, a0, r1, a1, p);
        std::swap(r0, r1);
        std::swap(a0, a1);
    }
    // r0 = gcd, a0 * f = r0 (mod u^n - 1)
    if (r0.size() != 1) return std::nullopt;
    const std::uint64_t scale = fpow(r0[0], p - 2, p);
    FPoly inv(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < a0.size(); ++i)
        inv[i % static_cast<std::size_t>(n)] = (inv[i % static_cast<std::size_t>(n)] + a0[i] * scale) % p;
    return inv;
}

} // namespace

LevelRing::LevelRing(std::int64_t p, int k, int n) : p_(p), k_(k), n_(n) {
    check_pk(p, k);
    if (n < 1) throw std::invalid_argument("cyclic-group order must be >= 1");
    Int pk = ipow(Int(p), static_cast<unsigned>(k));
    if (pk >= (Int(1) << 31))
        throw std::invalid_argument("p^k must stay below 2^31 for word arithmetic");
    pk_ = pk.convert_to<std::uint64_t>();
}

void LevelRing::check(const LevelElt& a) const {
    if (a.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("level element has the wrong length for this ring");
}

LevelElt LevelRing::zero() const { return LevelElt(static_cast<std::size_t>(n_), 0); }

LevelElt LevelRing::one() const {
    LevelElt e = zero();
    e[0] = 1 % pk_;
    return e;
}

LevelElt LevelRing::u() const {
    if (n_ == 1) return one();
    LevelElt e = zero();
    e[1] = 1;
    return e;
}

LevelElt LevelRing::from_ipoly(const zetafn::IPoly& poly) const {
    LevelElt e = zero();
    const Int pk(pk_);
    for (std::size_t j = 0; j < poly.size(); ++j) {
        const std::size_t idx = j % static_cast<std::size_t>(n_);
        e[idx] = (e[idx] + imod(poly[j], pk).convert_to<std::uint64_t>()) % pk_;
    }
    return e;
}

LevelElt LevelRing::add(const LevelElt& a, const LevelElt& b) const {
    check(a);
    check(b);
    LevelElt r = zero();
    for (int i = 0; i < n_; ++i) r[static_cast<std::size_t>(i)] = (a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)]) % pk_;
    return r;
}

LevelElt LevelRing::sub(const LevelElt& a, const LevelElt& b) const {
    check(a);
    check(b);
    LevelElt r = zero();
    for (int i = 0; i < n_; ++i)
        r[static_cast<std::size_t>(i)] = (a[static_cast<std::size_t>(i)] + pk_ - b[static_cast<std::size_t>(i)]) % pk_;
    return r;
}

LevelElt LevelRing::neg(const LevelElt& a) const { return sub(zero(), a); }

LevelElt LevelRing::mul(const LevelElt& a, const LevelElt& b) const {
    check(a);
    check(b);
    LevelElt r = zero();
    for (int i = 0; i < n_; ++i) {
        if (a[static_cast<std::size_t>(i)] == 0) continue;
        unsigned __int128 carry = 0;
        // accumulate into each output slot; products stay below 2^62
        for (int j = 0; j < n_; ++j) {
            const int t = (i + j) % n_;
            carry = static_cast<unsigned __int128>(a[static_cast<std::size_t>(i)]) * b[static_cast<std::size_t>(j)] +
                    r[static_cast<std::size_t>(t)];
            r[static_cast<std::size_t>(t)] = static_cast<std::uint64_t>(carry % pk_);
        }
    }
    return r;
}

LevelElt LevelRing::reduce_mod_p(const LevelElt& a) const {
    check(a);
    LevelElt r = a;
    for (auto& c : r) c %= static_cast<std::uint64_t>(p_);
    return r;
}

bool LevelRing::is_unit(const LevelElt& a) const {
    check(a);
    return fp_cyclic_inverse(reduce_mod_p(a), n_, static_cast<std::uint64_t>(p_)).has_value();
}

std::optional<LevelElt> LevelRing::try_invert(const LevelElt& a) const {
    check(a);
    auto h0 = fp_cyclic_inverse(reduce_mod_p(a), n_, static_cast<std::uint64_t>(p_));
    if (!h0) return std::nullopt;
    LevelElt h = *h0; // inverse mod p; entries already canonical mod p^k
    // Newton lifting h <- h(2 - a h): the defect 1 - a h squares each round
    int prec = 1;
    while (prec < k_) {
        LevelElt t = sub(add(one(), one()), mul(a, h));
        h = mul(h, t);
        prec *= 2;
    }
    if (mul(a, h) != one()) throw std::logic_error("level inversion failed to verify");
    return h;
}

LevelElt LevelRing::invert(const LevelElt& a) const {
    auto r = try_invert(a);
    if (!r) throw NonUnit(reduce_mod_p(a), "element is not a unit at level (n=" + std::to_string(n_) +
                                               ", p^k=" + std::to_string(pk_) + ")");
    return *r;
}

LevelElt project(const LevelRing& from, const LevelElt& a, const LevelRing& to) {
    if (from.p() != to.p() || from.k() != to.k())
        throw std::invalid_argument("project: coefficient parameters differ");
    if (from.n() % to.n() != 0) throw std::invalid_argument("project: target order must divide source order");
    if (a.size() != static_cast<std::size_t>(from.n()))
        throw std::invalid_argument("project: element length mismatch");
    LevelElt r = to.zero();
    for (int j = 0; j < from.n(); ++j) {
        const std::size_t idx = static_cast<std::size_t>(j % to.n());
        r[idx] = (r[idx] + a[static_cast<std::size_t>(j)]) % to.modulus();
    }
    return r;
}

std::optional<LevelElt> reduce_rational(const zetafn::RationalFn& f, const LevelRing& R) {
    auto den_inv = R.try_invert(R.from_ipoly(f.den));
    if (!den_inv) return std::nullopt;
    return R.mul(R.from_ipoly(f.num), *den_inv);
}

PAdicApprox eval_at_one(const zetafn::RationalFn& f, std::int64_t p, int k) {
    check_pk(p, k);
    Int num1 = 0, den1 = 0;
    for (const auto& c : f.num) num1 += c;
    for (const auto& c : f.den) den1 += c;
    if (num1 == 0 || den1 == 0) throw ZeroOrPoleAtOne("zero or pole at u = 1");
    return PAdicApprox::from_ratio(num1, den1, p, k);
}

} // namespace zel::coeff
