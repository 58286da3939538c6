#include "zel/gf.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace zel::gf {

namespace {

// ---- dense polynomials over F_p, coefficient lists with constant term first ----

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a by monic b
Poly poly_rem(Poly a, const Poly& b, std::int64_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const std::uint64_t q = a.back();
        const std::size_t shift = a.size() - 1 - db;
        if (q)
            for (std::size_t j = 0; j < b.size(); ++j) {
                const std::uint64_t sub = q * b[j] % p;
                a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - sub) % p);
            }
        trim(a);
        if (a.size() <= db) break;
    }
    return a;
}

std::uint64_t checked_pow(std::int64_t p, int e) {
    std::uint64_t s = 1;
    for (int i = 0; i < e; ++i) {
        s *= static_cast<std::uint64_t>(p);
        if (s > kMaxSize) throw std::invalid_argument("make_field: p^e exceeds 2^24");
    }
    return s;
}

std::vector<std::int64_t> prime_factors(std::uint64_t n) {
    std::vector<std::int64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(static_cast<std::int64_t>(d));
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(static_cast<std::int64_t>(n));
    return out;
}

struct PairKey {
    std::int64_t p;
    int d, n;
    auto operator<=>(const PairKey&) const = default;
};

std::mutex g_fields_mu;
std::map<std::pair<std::int64_t, int>, std::unique_ptr<Field>> g_fields;

std::mutex g_embed_mu;
std::map<PairKey, FieldElt> g_embed_roots;

} // namespace

bool is_irreducible(const Poly& poly, std::int64_t p) {
    if (poly.empty() || poly.back() != 1)
        throw std::invalid_argument("is_irreducible: polynomial must be monic");
    const int e = static_cast<int>(poly.size()) - 1;
    if (e < 1) return false;
    if (e == 1) return true;
    Poly div(2, 0);
    for (int d = 1; d <= e / 2; ++d) {
        div.assign(static_cast<std::size_t>(d) + 1, 0);
        div[d] = 1;
        // walk all monic divisors of degree d in lex order on the low coefficients
        while (true) {
            if (poly_rem(poly, div, p).empty()) return false;
            int i = d - 1;
            while (i >= 0 && div[i] == static_cast<std::uint32_t>(p - 1)) div[i--] = 0;
            if (i < 0) break;
            ++div[i];
        }
    }
    return true;
}

Poly canonical_modulus(std::int64_t p, int e) {
    Poly cand(static_cast<std::size_t>(e) + 1, 0);
    cand[e] = 1;
    while (true) {
        if (is_irreducible(cand, p)) return cand;
        int i = e - 1;
        while (i >= 0 && cand[i] == static_cast<std::uint32_t>(p - 1)) cand[i--] = 0;
        if (i < 0) throw std::logic_error("canonical_modulus: no irreducible found");
        ++cand[i];
    }
}

// ---- Field ----

Field::Field(std::int64_t p, int e) : ch(p), deg(e), size(checked_pow(p, e)), modulus(canonical_modulus(p, e)) {
    // fixed multiplicative generator: first element (in lex order) of full order
    gen_mult_ = one();
    if (size > 2) {
        const auto factors = prime_factors(size - 1);
        for (std::uint64_t i = 1; i < size; ++i) {
            FieldElt g = element(i);
            bool ok = true;
            for (auto ell : factors)
                if (pow(g, (size - 1) / static_cast<std::uint64_t>(ell)) == one()) {
                    ok = false;
                    break;
                }
            if (ok) {
                gen_mult_ = g;
                break;
            }
        }
    }
}

FieldElt Field::zero() const {
    FieldElt r;
    r.fld = this;
    return r;
}

FieldElt Field::one() const {
    FieldElt r = zero();
    r.c[0] = 1;
    return r;
}

FieldElt Field::gen() const {
    if (deg == 1) return one();
    FieldElt r = zero();
    r.c[1] = 1;
    return r;
}

FieldElt Field::from_int(const Int& v) const {
    FieldElt r = zero();
    r.c[0] = static_cast<std::uint32_t>(imod(v, ch).convert_to<std::int64_t>());
    return r;
}

FieldElt Field::make(std::vector<std::uint32_t> coeffs) const {
    if (coeffs.size() > static_cast<std::size_t>(deg))
        throw std::invalid_argument("Field::make: too many coefficients");
    FieldElt r = zero();
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        r.c[i] = static_cast<std::uint32_t>(coeffs[i] % ch);
    return r;
}

FieldElt Field::element(std::uint64_t i) const {
    if (i >= size) throw std::out_of_range("Field::element: index out of range");
    FieldElt r = zero();
    for (int j = deg - 1; j >= 0; --j) { // c[j] is the slowest-varying digit for small j
        r.c[j] = static_cast<std::uint32_t>(i % ch);
        i /= ch;
    }
    return r;
}

std::uint64_t Field::index(const FieldElt& a) const {
    std::uint64_t i = 0;
    for (int j = 0; j < deg; ++j) i = i * ch + a.c[j];
    return i;
}

FieldElt Field::add(const FieldElt& a, const FieldElt& b) const {
    FieldElt r = zero();
    for (int i = 0; i < deg; ++i) r.c[i] = static_cast<std::uint32_t>((std::uint64_t{a.c[i]} + b.c[i]) % ch);
    return r;
}

FieldElt Field::sub(const FieldElt& a, const FieldElt& b) const {
    FieldElt r = zero();
    for (int i = 0; i < deg; ++i)
        r.c[i] = static_cast<std::uint32_t>((std::uint64_t{a.c[i]} + ch - b.c[i]) % ch);
    return r;
}

FieldElt Field::neg(const FieldElt& a) const { return sub(zero(), a); }

FieldElt Field::mul(const FieldElt& a, const FieldElt& b) const {
    std::array<std::uint64_t, 2 * kMaxDeg> acc{};
    for (int i = 0; i < deg; ++i) {
        if (!a.c[i]) continue;
        for (int j = 0; j < deg; ++j) acc[i + j] += std::uint64_t{a.c[i]} * b.c[j] % ch;
    }
    // reduce x^t for t >= deg using x^deg = -modulus[0..deg-1]
    for (int t = 2 * deg - 2; t >= deg; --t) {
        const std::uint64_t v = acc[t] % ch;
        if (!v) continue;
        for (int j = 0; j < deg; ++j) acc[t - deg + j] += v * ((ch - modulus[j]) % ch) % ch;
        acc[t] = 0;
    }
    FieldElt r = zero();
    for (int i = 0; i < deg; ++i) r.c[i] = static_cast<std::uint32_t>(acc[i] % ch);
    return r;
}

FieldElt Field::pow(FieldElt a, std::uint64_t e) const {
    FieldElt r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

FieldElt Field::inv(const FieldElt& a) const {
    if (a.is_zero()) throw std::domain_error("Field::inv: zero is not invertible");
    return pow(a, size - 2);
}

FieldElt Field::div(const FieldElt& a, const FieldElt& b) const { return mul(a, inv(b)); }

FieldElt Field::frobenius(const FieldElt& a, std::uint64_t j) const {
    j %= static_cast<std::uint64_t>(deg);
    FieldElt r = a;
    for (std::uint64_t i = 0; i < j; ++i) r = pow(r, static_cast<std::uint64_t>(ch));
    return r;
}

bool FieldElt::is_zero() const {
    for (auto v : c)
        if (v) return false;
    return true;
}

namespace {
const Field& parent_of(const FieldElt& a, const FieldElt& b) {
    if (a.fld == nullptr || a.fld != b.fld)
        throw std::invalid_argument("field element operation: mismatched parent fields");
    return *a.fld;
}
} // namespace

FieldElt FieldElt::operator+(const FieldElt& o) const { return parent_of(*this, o).add(*this, o); }
FieldElt FieldElt::operator-(const FieldElt& o) const { return parent_of(*this, o).sub(*this, o); }
FieldElt FieldElt::operator*(const FieldElt& o) const { return parent_of(*this, o).mul(*this, o); }
FieldElt FieldElt::operator/(const FieldElt& o) const { return parent_of(*this, o).div(*this, o); }
FieldElt FieldElt::operator-() const { return fld->neg(*this); }

const Field& make_field(std::int64_t p, int e) {
    if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("make_field: characteristic must be prime");
    if (e < 1 || e > kMaxDeg) throw std::invalid_argument("make_field: degree must be in [1, 16]");
    checked_pow(p, e);
    std::lock_guard lk(g_fields_mu);
    auto& slot = g_fields[{p, e}];
    if (!slot) slot = std::unique_ptr<Field>(new Field(p, e));
    return *slot;
}

// ---- embeddings ----

namespace {

// evaluate a polynomial with prime-field coefficients at x in dst
FieldElt eval_scalar_poly(const Field& dst, const Poly& coeffs, const FieldElt& x) {
    FieldElt acc = dst.zero();
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = dst.add(dst.mul(acc, x), dst.from_int(coeffs[i]));
    return acc;
}

// evaluate an element of src (coefficient vector over F_p) at r in dst
FieldElt eval_elt_at(const Field& src, const Field& dst, const FieldElt& a, const FieldElt& r) {
    Poly coeffs(src.deg);
    for (int i = 0; i < src.deg; ++i) coeffs[i] = a.c[i];
    return eval_scalar_poly(dst, coeffs, r);
}

// all roots of the (irreducible, degree d) polynomial in dst; they lie in the
// p^d-element subfield, generated from the fixed multiplicative generator
std::vector<FieldElt> roots_in_dst(const Field& dst, const Poly& poly) {
    const int d = static_cast<int>(poly.size()) - 1;
    std::vector<FieldElt> roots;
    if (eval_scalar_poly(dst, poly, dst.zero()).is_zero()) roots.push_back(dst.zero());
    const std::uint64_t sub = u64pow(static_cast<std::uint64_t>(dst.ch), static_cast<unsigned>(d));
    if (dst.size >= 3) {
        const FieldElt beta = dst.pow(dst.mult_generator(), (dst.size - 1) / (sub - 1));
        FieldElt cur = dst.one();
        for (std::uint64_t i = 0; i + 1 < sub; ++i) {
            if (eval_scalar_poly(dst, poly, cur).is_zero()) roots.push_back(cur);
            cur = dst.mul(cur, beta);
        }
    } else if (eval_scalar_poly(dst, poly, dst.one()).is_zero()) {
        roots.push_back(dst.one());
    }
    return roots;
}

} // namespace

FieldElt embed_root(const Field& src, const Field& dst) {
    if (src.ch != dst.ch) throw std::invalid_argument("embed: mismatched characteristics");
    if (dst.deg % src.deg != 0)
        throw std::invalid_argument("embed: source degree does not divide target degree");
    const PairKey key{src.ch, src.deg, dst.deg};
    {
        std::lock_guard lk(g_embed_mu);
        auto it = g_embed_roots.find(key);
        if (it != g_embed_roots.end()) return it->second;
    }

    std::vector<FieldElt> roots = roots_in_dst(dst, src.modulus);
    // keep roots compatible with every proper divisor degree, so towers commute
    for (int dp = 2; dp < src.deg; ++dp) {
        if (src.deg % dp != 0) continue;
        const Field& mid = make_field(src.ch, dp);
        const FieldElt in_src = embed(mid, src, mid.gen());
        const FieldElt in_dst = embed(mid, dst, mid.gen());
        std::vector<FieldElt> keep;
        for (const auto& r : roots)
            if (eval_elt_at(src, dst, in_src, r) == in_dst) keep.push_back(r);
        roots = std::move(keep);
    }
    if (roots.empty()) throw std::logic_error("embed: no admissible root (internal invariant violated)");
    FieldElt best = roots[0];
    for (const auto& r : roots)
        if (dst.index(r) < dst.index(best)) best = r;

    std::lock_guard lk(g_embed_mu);
    return g_embed_roots.try_emplace(key, best).first->second;
}

FieldElt embed(const Field& src, const Field& dst, const FieldElt& a) {
    if (a.fld != &src) throw std::invalid_argument("embed: element does not belong to source field");
    if (&src == &dst) return a;
    const FieldElt r = embed_root(src, dst);
    return eval_elt_at(src, dst, a, r);
}

} // namespace zel::gf
