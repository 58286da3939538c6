#pragma once

// Schemes of finite type presented by equations in an affine or projective
// ambient over a finite field, and exhaustive point counting over extensions.
//
// Counting is set-theoretic on solution tuples. Projective points are
// enumerated through normalized representatives (first nonzero coordinate
// equal to 1), so the number of representatives IS the point count. The
// OpenMP kernel partitions the enumeration domain; count_points_serial is the
// plain reference loop kept for testing against it.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zel/gf.hpp"
#include "zel/ints.hpp"

namespace zel::variety {

inline constexpr int kMaxAmbientDim = 4;
inline constexpr int kMaxVars = kMaxAmbientDim + 1;
inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct Term {
    gf::FieldElt coeff;
    std::array<std::uint8_t, kMaxVars> exps{};
};

// sparse multivariate polynomial over the base field; canonical form is
// lex-sorted exponent tuples, merged, with zero coefficients dropped
struct MultiPoly {
    std::vector<Term> terms;
    bool is_zero() const { return terms.empty(); }
    int total_degree() const;
};

MultiPoly make_poly(const gf::Field& base, std::vector<Term> terms);

enum class Ambient { Affine, Projective };

struct SchemeSpec {
    const gf::Field* base = nullptr;
    Ambient ambient = Ambient::Affine;
    int dim = 1; // affine(N): N variables; projective(N): N+1 coordinates
    std::vector<MultiPoly> equations;
    std::vector<MultiPoly> inequations; // affine only

    int nvars() const { return ambient == Ambient::Affine ? dim : dim + 1; }
};

// validates dimension bounds, coefficient parents, homogeneity for projective
// ambients, and that inequations only appear in affine ambients
SchemeSpec make_scheme(const gf::Field& base, Ambient ambient, int dim,
                       std::vector<MultiPoly> equations, std::vector<MultiPoly> inequations = {});

struct BudgetExceeded : std::runtime_error {
    Int needed;
    std::uint64_t budget;
    BudgetExceeded(Int needed_, std::uint64_t budget_);
};

struct ExtensionUnsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// #X(F_{q^n}) by exhaustive enumeration (OpenMP-parallel kernel). Ambients
// with no equations and no inequations are counted in closed form without
// enumerating; the budget charges only tuples actually enumerated, and the
// field tower's degree and size caps bind only when a field is built, so
// closed-form counts work at every n >= 1.
Int count_points(const SchemeSpec& s, int n, std::uint64_t budget = kDefaultBudget);

// plain serial loop, no closed-form shortcut; reference for the kernel
Int count_points_serial(const SchemeSpec& s, int n, std::uint64_t budget = kDefaultBudget);

struct CountCacheHook {
    virtual ~CountCacheHook() = default;
    virtual std::optional<Int> get(int n) = 0;
    virtual void put(int n, const Int& count) = 0;
};

// counts for n = 1..N; consults the hook before counting and stores fresh results
std::vector<Int> count_series(const SchemeSpec& s, int N, std::uint64_t budget = kDefaultBudget,
                              CountCacheHook* cache = nullptr);

// closed point = Frobenius orbit of geometric points; orbit[0] is the
// lex-smallest tuple (by coordinate element indices) over F_{q^degree}
struct ClosedPoint {
    int degree;
    std::vector<std::vector<gf::FieldElt>> orbit;
};

// all closed points of degree <= max_degree, ordered by (degree, representative)
std::vector<ClosedPoint> closed_points(const SchemeSpec& s, int max_degree,
                                       std::uint64_t budget = kDefaultBudget);

} // namespace zel::variety
