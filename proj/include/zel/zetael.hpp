#pragma once

// Zeta elements as determinant-line coordinates, at a finite level and in
// the plain p-adic regime.
//
// The geometric input is either a disjoint union of closed points carrying
// free modules with Frobenius (PointsScheme) or a validated cohomology model
// of a standard scheme (CatalogEntry).  gamma_c turns it into a graded
// complex with Frobenius; zeta_element forms the inverse determinant line of
// the mapping fiber of 1 - phi and trivializes it structurally; the
// acyclicity trivialization, where it exists, rewrites each shifted factor
// through 1 - phi, and the ratio of the two trivializations is the
// coordinate the verification checks compare against L-values.
//
// Coordinates live in a level ring (Z/p^k)[u]/(u^n - 1) when a level n is
// given, and are p-adic approximations otherwise.  A non-invertible
// 1 - phi at a level is not an error and not a failure: it is reported as
// Inconclusive with the reason attached.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zel/coeff.hpp"
#include "zel/ints.hpp"
#include "zel/matrix.hpp"
#include "zel/report.hpp"
#include "zel/variety.hpp"
#include "zel/zetafn.hpp"

namespace zel::zetael {

// Coefficient level: plain Z/p^k when n is absent, (Z/p^k)[u]/(u^n - 1)
// when n is present.
struct LevelSpec {
    std::int64_t p = 0;
    int k = 0;
    std::optional<int> n;
};

// Free module over Z/p^k with an invertible Frobenius action.  Entries are
// canonical lifts in [0, p^k).  Rank 0 (zero sheaf) is allowed.
struct PhiModule {
    std::int64_t p = 0;
    int k = 0;
    int rank = 0;
    matrix::Mat<Int> phi;
};

// Validates and canonicalizes: p prime, k >= 1, p^k < 2^31, phi square of
// the given rank with det(phi) a unit.  Throws std::invalid_argument.
PhiModule make_phi_module(std::int64_t p, int k, matrix::Mat<Int> phi);

// Same module over Z/p^k' for k' <= k.
PhiModule reduce_phi_module(const PhiModule& m, int k_new);

// Rank d*r module on the base induced from a degree-d point: summand i maps
// to summand i+1 by the identity, the last wraps to the first by phi.
// det(1 - induced t) = det(1 - phi t^d).
PhiModule induced_module(int degree, const PhiModule& m);

struct PointComponent {
    int degree = 1;
    PhiModule module;
};

// Disjoint union of closed points of the stated degrees over a common
// finite base field, each carrying a module with Frobenius.
struct PointsScheme {
    std::vector<PointComponent> components;
};

// Cohomology model of a standard scheme: integer Frobenius matrices per
// degree, plus the defining equations used to validate the model by
// counting.  Constructed by catalog_entry / validated_catalog_entry.
struct CatalogEntry {
    std::string name;
    std::int64_t ch = 0;  // base field characteristic
    int deg = 1;          // base field F_q, q = ch^deg
    std::vector<std::pair<int, matrix::Mat<Int>>> cohomology;  // (m, phi on H^m_c)
    variety::SchemeSpec scheme;
};

using SiteObject = std::variant<PointsScheme, CatalogEntry>;

// One graded piece of the complex produced by gamma_c.  Exactly one of the
// two matrices is populated, matching the level: phi_plain over Z/p^k lifts,
// phi_level over the level ring.
struct ComplexTerm {
    int m = 0;
    int rank = 0;
    matrix::Mat<Int> phi_plain;
    matrix::Mat<coeff::LevelElt> phi_level;
};

struct PhiComplex {
    LevelSpec level;
    std::vector<ComplexTerm> terms;  // ascending m, distinct
};

// Compression of the geometric object to a graded complex with Frobenius.
// Points land in degree 0 as induced blocks; at a level the wrap-around
// factor of a degree-d block carries u^d, so det(1 - phi t) = det(1 - phi_M
// u^d t^d).  Catalog matrices are taken as stored, every entry times u at a
// level.  Throws std::invalid_argument on p / k mismatches (for catalog
// entries, p must differ from the base characteristic).
PhiComplex gamma_c(const SiteObject& s, const LevelSpec& level);

// Verdict payload for coordinates that do not exist at the requested level.
// vanishing marks the plain-regime case where an integer determinant is
// exactly zero (the vanishing-order hypothesis fails, rather than the level
// being too coarse).
struct Inconclusive {
    std::string reason;
    bool vanishing = false;
};

using Coordinate = std::variant<coeff::LevelElt, coeff::PAdicApprox, Inconclusive>;

bool coordinate_defined(const Coordinate& c);
bool coordinate_equal(const Coordinate& a, const Coordinate& b);
nlohmann::ordered_json coordinate_json(const Coordinate& c);

// Invertible line over the working ring, tracked by a generator label and
// the coordinate of the current generator against the reference one.
struct DetLine {
    LevelSpec ring;
    std::string generator;
    Coordinate coordinate;
};

// The inverse determinant line of the mapping fiber of 1 - phi on gamma_c,
// with the structural trivialization applied.  delta.coordinate is the
// coordinate of the distinguished element against the reference generator
// (a sign: the Koszul cost of contracting the paired factors).
struct ZetaElement {
    PhiComplex complex;
    DetLine delta;
};

ZetaElement zeta_element(const SiteObject& s, const LevelSpec& level);

// Coordinate of the distinguished element under the acyclicity
// trivialization: the shifted factor in each fiber degree is rewritten
// through 1 - phi and the word is contracted again; the ratio against the
// structural path is returned.  Requires every det(1 - phi_m) to be
// invertible at the level (else Inconclusive); in the plain regime the
// determinants are exact integers and the result is a p-adic approximation,
// Inconclusive when a determinant vanishes or falls below the working
// precision.
Coordinate acyclicity_coordinate(const ZetaElement& z);

// L-function of the object as a rational function over Z: alternating
// product of det(1 - phi_m t) with odd degrees in the numerator.  Points
// contribute det(1 - phi_M t^d) in degree 0.
zetafn::RationalFn lfunction(const SiteObject& s);

// Checks.  Each returns a CheckReport; none of them throws on a
// mathematical failure (that is what verdicts are for).  They throw
// std::invalid_argument on malformed input only.

// Zeta element equals the reduction of the L-function at level (n, k):
// acyclicity coordinate vs reduce_rational of lfunction.  Pass iff both are
// defined and equal; Inconclusive if either side is undefined at the level.
report::CheckReport verify_zeta_eq_element(const SiteObject& s, std::int64_t p, int k, int n);

// Plain zeta value: acyclicity coordinate vs the L-function evaluated at
// u = 1, as p-adic approximations.  HypothesisFailure when some integer
// determinant det(1 - phi_m) vanishes (the vanishing-order hypothesis), Pass
// or Fail otherwise.
report::CheckReport verify_zeta_value(const SiteObject& s, std::int64_t p, int k);

// Projection compatibility: the coordinate at level n_big maps to the
// coordinate at level n_small under the fiber-sum projection, and reducing
// k by one commutes as well.  Requires n_small | n_big.
report::CheckReport verify_base_change(const SiteObject& s, std::int64_t p, int k, int n_big,
                                       int n_small);

// Multiplicativity along a short exact sequence of modules: total must be
// block upper triangular with sub in the top-left and quot in the
// bottom-right; coordinate(total) = coordinate(sub) * coordinate(quot).
// Works at a level or plain.  Throws on block-structure mismatch.
report::CheckReport verify_triangle(const PhiModule& sub, const PhiModule& total,
                                    const PhiModule& quot, const LevelSpec& level);

// Pushforward along Spec F_{q^d} -> Spec F_q: the zeta element of the
// degree-d point with module m equals that of the degree-1 point carrying
// the induced module, coordinatewise.
report::CheckReport verify_pushforward(int degree, const PhiModule& m, const LevelSpec& level);

// Norm compatibility along a divisor chain n_1 | n_2 | ...: every adjacent
// projection carries the level-n_{i+1} coordinate to the level-n_i one.
// One certificate for the whole chain.
report::CheckReport verify_norm_system(const SiteObject& s, std::int64_t p, int k,
                                       const std::vector<int>& chain);

// Catalog.  Known names: "A1".."A3", "P1".."P3", "Gm" over a small base
// field, and "elliptic(q,a)" for the stocked curves.  catalog_entry builds
// the model (for elliptic entries the H^1 trace is read off from actual
// point counts); validate_catalog checks the model against the zeta
// function reconstructed from counting and returns a report;
// validated_catalog_entry caches successful validations and throws if the
// model is rejected.
CatalogEntry catalog_entry(const std::string& name, std::int64_t ch, int deg);
report::CheckReport validate_catalog(const std::string& name, std::int64_t ch, int deg);
const CatalogEntry& validated_catalog_entry(const std::string& name, std::int64_t ch, int deg);
std::vector<std::string> catalog_names();

}  // namespace zel::zetael
