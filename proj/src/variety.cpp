#include "zel/variety.hpp"

#include <algorithm>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zel::variety {

int MultiPoly::total_degree() const {
    int d = 0;
    for (const auto& t : terms) {
        int s = 0;
        for (auto e : t.exps) s += e;
        d = std::max(d, s);
    }
    return d;
}

MultiPoly make_poly(const gf::Field& base, std::vector<Term> terms) {
    for (auto& t : terms)
        if (t.coeff.fld != &base) throw std::invalid_argument("make_poly: coefficient from wrong field");
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exps < b.exps; });
    MultiPoly p;
    for (auto& t : terms) {
        if (!p.terms.empty() && p.terms.back().exps == t.exps)
            p.terms.back().coeff = p.terms.back().coeff + t.coeff;
        else
            p.terms.push_back(t);
    }
    std::erase_if(p.terms, [](const Term& t) { return t.coeff.is_zero(); });
    return p;
}

SchemeSpec make_scheme(const gf::Field& base, Ambient ambient, int dim,
                       std::vector<MultiPoly> equations, std::vector<MultiPoly> inequations) {
    if (dim < 1 || dim > kMaxAmbientDim)
        throw std::invalid_argument("make_scheme: ambient dimension must be in [1, 4]");
    SchemeSpec s;
    s.base = &base;
    s.ambient = ambient;
    s.dim = dim;
    s.equations = std::move(equations);
    s.inequations = std::move(inequations);
    if (ambient == Ambient::Projective && !s.inequations.empty())
        throw std::invalid_argument("make_scheme: inequations are only allowed in affine ambients");
    auto check_poly = [&](const MultiPoly& p, bool homog) {
        int common = -1;
        for (const auto& t : p.terms) {
            if (t.coeff.fld != &base) throw std::invalid_argument("make_scheme: coefficient from wrong field");
            int deg = 0;
            for (int v = 0; v < kMaxVars; ++v) {
                if (v >= s.nvars() && t.exps[v])
                    throw std::invalid_argument("make_scheme: term uses a variable beyond the ambient");
                deg += t.exps[v];
            }
            if (homog) {
                if (common < 0) common = deg;
                if (deg != common)
                    throw std::invalid_argument("make_scheme: projective equations must be homogeneous");
            }
        }
    };
    for (const auto& p : s.equations) check_poly(p, ambient == Ambient::Projective);
    for (const auto& p : s.inequations) check_poly(p, false);
    return s;
}

BudgetExceeded::BudgetExceeded(Int needed_, std::uint64_t budget_)
    : std::runtime_error("enumeration budget exceeded: needs " + needed_.str() + " tuples, budget " +
                         std::to_string(budget_)),
      needed(std::move(needed_)),
      budget(budget_) {}

namespace {

const gf::Field& extension_field(const SchemeSpec& s, int n) {
    if (n < 1) throw std::invalid_argument("count_points: extension index must be >= 1");
    try {
        return gf::make_field(s.base->ch, s.base->deg * n);
    } catch (const std::invalid_argument&) {
        throw ExtensionUnsupported("extension F_{q^" + std::to_string(n) + "} exceeds the supported field bounds (degree <= 16, size <= 2^24)");
    }
}

struct Compiled {
    const gf::Field* E = nullptr;
    int nvars = 0;
    std::vector<std::vector<Term>> eqs;   // coefficients embedded in E
    std::vector<std::vector<Term>> ineqs;

    bool satisfied(const std::array<gf::FieldElt, kMaxVars>& x) const {
        for (const auto& poly : eqs)
            if (!eval(poly, x).is_zero()) return false;
        for (const auto& poly : ineqs)
            if (eval(poly, x).is_zero()) return false;
        return true;
    }

    gf::FieldElt eval(const std::vector<Term>& poly, const std::array<gf::FieldElt, kMaxVars>& x) const {
        gf::FieldElt acc = E->zero();
        for (const auto& t : poly) {
            gf::FieldElt v = t.coeff;
            for (int i = 0; i < nvars; ++i)
                if (t.exps[i]) v = E->mul(v, E->pow(x[i], t.exps[i]));
            acc = E->add(acc, v);
        }
        return acc;
    }
};

Compiled compile(const SchemeSpec& s, const gf::Field& E) {
    Compiled c;
    c.E = &E;
    c.nvars = s.nvars();
    auto embed_poly = [&](const MultiPoly& p) {
        std::vector<Term> out;
        out.reserve(p.terms.size());
        for (const auto& t : p.terms) out.push_back({gf::embed(*s.base, E, t.coeff), t.exps});
        return out;
    };
    for (const auto& p : s.equations) c.eqs.push_back(embed_poly(p));
    for (const auto& p : s.inequations) c.ineqs.push_back(embed_poly(p));
    return c;
}

// one enumeration block: coordinates [0, lead) pinned to 0, coordinate `lead`
// pinned to 1 (projective) or absent (affine, lead = -1), the rest free
struct Block {
    int lead;      // -1 for the affine block
    int free_from; // first free coordinate
};

std::vector<Block> blocks_of(const SchemeSpec& s) {
    if (s.ambient == Ambient::Affine) return {{-1, 0}};
    std::vector<Block> bs;
    for (int lead = 0; lead < s.nvars(); ++lead) bs.push_back({lead, lead + 1});
    return bs;
}

Int block_size(const SchemeSpec& s, const gf::Field& E, const Block& b) {
    return ipow(Int(E.size), static_cast<unsigned>(s.nvars() - b.free_from));
}

// count satisfied tuples for linear indices [lo, hi) of the block's free part
std::uint64_t count_range(const Compiled& c, const Block& b, std::uint64_t lo, std::uint64_t hi) {
    const gf::Field& E = *c.E;
    const int nfree = c.nvars - b.free_from;
    std::array<gf::FieldElt, kMaxVars> x;
    for (int i = 0; i < c.nvars; ++i) x[i] = E.zero();
    if (b.lead >= 0) x[b.lead] = E.one();

    std::array<std::uint64_t, kMaxVars> digit{};
    std::uint64_t rest = lo;
    for (int i = nfree - 1; i >= 0; --i) {
        digit[i] = rest % E.size;
        rest /= E.size;
        x[b.free_from + i] = E.element(digit[i]);
    }

    std::uint64_t cnt = 0;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        if (c.satisfied(x)) ++cnt;
        // odometer step, last free coordinate fastest
        for (int i = nfree - 1; i >= 0; --i) {
            if (++digit[i] < E.size) {
                x[b.free_from + i] = E.element(digit[i]);
                break;
            }
            digit[i] = 0;
            x[b.free_from + i] = E.zero();
        }
    }
    return cnt;
}

Int count_impl(const SchemeSpec& s, int n, std::uint64_t budget, bool parallel) {
    if (n < 1) throw std::invalid_argument("count_points: extension index must be >= 1");
    const bool closed_form = parallel && s.equations.empty() && s.inequations.empty();
    if (closed_form) {
        // pure ambients cost nothing and are exempt from the field tower's
        // degree bound: the block sizes only need q^n as an integer
        const Int qn = ipow(Int(s.base->size), static_cast<unsigned>(n));
        Int total = 0;
        for (const auto& b : blocks_of(s))
            total += ipow(qn, static_cast<unsigned>(s.nvars() - b.free_from));
        return total;
    }

    const gf::Field& E = extension_field(s, n);
    Int to_enumerate = 0;
    for (const auto& b : blocks_of(s)) to_enumerate += block_size(s, E, b);
    if (to_enumerate > budget) throw BudgetExceeded(to_enumerate, budget);

    const Compiled c = compile(s, E);
    Int total = 0;
    for (const auto& b : blocks_of(s)) {
        const std::uint64_t size = block_size(s, E, b).convert_to<std::uint64_t>();
        if (!parallel) {
            total += count_range(c, b, 0, size);
            continue;
        }
#ifdef _OPENMP
        const std::uint64_t nchunks =
            std::min<std::uint64_t>(size, 8 * static_cast<std::uint64_t>(omp_get_max_threads()));
        const std::uint64_t chunk = nchunks ? (size + nchunks - 1) / nchunks : 0;
        std::uint64_t cnt = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : cnt)
        for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(nchunks); ++ci) {
            const std::uint64_t lo = static_cast<std::uint64_t>(ci) * chunk;
            const std::uint64_t hi = std::min(size, lo + chunk);
            cnt += count_range(c, b, lo, hi);
        }
        total += cnt;
#else
        total += count_range(c, b, 0, size);
#endif
    }
    return total;
}

} // namespace

Int count_points(const SchemeSpec& s, int n, std::uint64_t budget) { return count_impl(s, n, budget, true); }

Int count_points_serial(const SchemeSpec& s, int n, std::uint64_t budget) {
    return count_impl(s, n, budget, false);
}

std::vector<Int> count_series(const SchemeSpec& s, int N, std::uint64_t budget, CountCacheHook* cache) {
    std::vector<Int> out;
    out.reserve(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        if (cache) {
            if (auto hit = cache->get(n)) {
                out.push_back(*hit);
                continue;
            }
        }
        Int c = count_points(s, n, budget);
        if (cache) cache->put(n, c);
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

std::vector<std::uint64_t> tuple_indices(const gf::Field& E, const std::vector<gf::FieldElt>& t) {
    std::vector<std::uint64_t> v;
    v.reserve(t.size());
    for (const auto& e : t) v.push_back(E.index(e));
    return v;
}

} // namespace

std::vector<ClosedPoint> closed_points(const SchemeSpec& s, int max_degree, std::uint64_t budget) {
    if (max_degree < 1) throw std::invalid_argument("closed_points: max_degree must be >= 1");
    std::vector<ClosedPoint> out;
    Int used = 0;
    for (int d = 1; d <= max_degree; ++d) {
        const gf::Field& E = extension_field(s, d);
        Int need = 0;
        for (const auto& b : blocks_of(s)) need += block_size(s, E, b);
        used += need;
        if (used > budget) throw BudgetExceeded(used, budget);

        // collect all solutions over F_{q^d}
        const Compiled c = compile(s, E);
        std::vector<std::vector<gf::FieldElt>> sols;
        for (const auto& b : blocks_of(s)) {
            const std::uint64_t size = block_size(s, E, b).convert_to<std::uint64_t>();
            const int nfree = s.nvars() - b.free_from;
            std::array<gf::FieldElt, kMaxVars> x;
            for (int i = 0; i < s.nvars(); ++i) x[i] = E.zero();
            if (b.lead >= 0) x[b.lead] = E.one();
            std::array<std::uint64_t, kMaxVars> digit{};
            for (int i = 0; i < nfree; ++i) x[b.free_from + i] = E.zero();
            for (std::uint64_t idx = 0; idx < size; ++idx) {
                if (c.satisfied(x)) sols.emplace_back(x.begin(), x.begin() + s.nvars());
                for (int i = nfree - 1; i >= 0; --i) {
                    if (++digit[i] < E.size) {
                        x[b.free_from + i] = E.element(digit[i]);
                        break;
                    }
                    digit[i] = 0;
                    x[b.free_from + i] = E.zero();
                }
            }
        }

        // group into Frobenius orbits; keep exactly the degree-d ones
        auto frob = [&](const std::vector<gf::FieldElt>& t) {
            std::vector<gf::FieldElt> r = t;
            for (auto& e : r) e = E.frobenius(e, static_cast<std::uint64_t>(s.base->deg));
            return r;
        };
        for (const auto& sol : sols) {
            std::vector<std::vector<gf::FieldElt>> orbit{sol};
            for (;;) {
                auto next = frob(orbit.back());
                if (next == sol) break;
                orbit.push_back(std::move(next));
                if (static_cast<int>(orbit.size()) > d)
                    throw std::logic_error("closed_points: orbit exceeds field degree");
            }
            if (static_cast<int>(orbit.size()) != d) continue; // proper subfield point, counted at its own degree
            // emit once per orbit, rotated to start at the lex-smallest tuple
            std::size_t mi = 0;
            for (std::size_t i = 1; i < orbit.size(); ++i)
                if (tuple_indices(E, orbit[i]) < tuple_indices(E, orbit[mi])) mi = i;
            if (orbit[mi] != sol) continue;
            std::rotate(orbit.begin(), orbit.begin() + static_cast<std::ptrdiff_t>(mi), orbit.end());
            out.push_back({d, std::move(orbit)});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const ClosedPoint& a, const ClosedPoint& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        const gf::Field& E1 = *a.orbit[0][0].fld;
        const gf::Field& E2 = *b.orbit[0][0].fld;
        return tuple_indices(E1, a.orbit[0]) < tuple_indices(E2, b.orbit[0]);
    });
    return out;
}

} // namespace zel::variety
