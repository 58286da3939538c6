#pragma once

// Zeta and L power series with exact rational coefficients, Euler products
// over closed points, and recovery of the underlying rational function from
// finitely many point counts by minimal-linear-recurrence detection.
//
// All arithmetic is exact; nothing in this module touches floating point.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zel/ints.hpp"

namespace zel::zetafn {

// power series truncated at order coeffs.size() - 1; coeffs[i] multiplies u^i
using QSeries = std::vector<Rat>;

// integer polynomial, ascending powers, no trailing zeros
using IPoly = std::vector<Int>;

// num/den with integer coefficients, both constant terms 1, gcd 1 over Q
struct RationalFn {
    IPoly num{Int(1)};
    IPoly den{Int(1)};
    bool operator==(const RationalFn&) const = default;
};

// exp(sum_{n=1..N} counts[n-1] u^n / n), the generating series of the counts.
// Counts of an actual scheme make every coefficient a non-negative integer
// (the coefficients count effective 0-cycles); anything else throws
// std::domain_error flagging the counts as inconsistent.
QSeries zeta_series(const std::vector<Int>& counts, int N);

// one closed point: degree of its residue field and the local characteristic
// polynomial det(1 - phi T) acting on the stalk, ascending in T with constant
// term 1. An empty factor means the constant sheaf, factor 1 - T.
struct LocalFactor {
    int degree = 1;
    IPoly factor{};
};

// product of det(1 - phi_x u^{deg x})^{-1} over the given points, truncated
// after u^N. The caller declares through `cover` the degree up to which the
// list is complete; N > cover is refused since those coefficients would be
// missing contributions.
QSeries euler_product(const std::vector<LocalFactor>& points, int cover, int N);

// raised when a series is too short to pin down a rational function within
// the requested degree bounds; extra_terms says how many more coefficients
// the failed attempt would have needed (0 when the bounds themselves are the
// obstruction and more data cannot help)
struct InsufficientData : std::runtime_error {
    int extra_terms;
    InsufficientData(int extra, const std::string& msg)
        : std::runtime_error(msg), extra_terms(extra) {}
};

// minimal linear recurrence of the coefficient sequence (Berlekamp-Massey
// over Q): connection[0] = 1 and
//   sum_{j=0..deg} connection[j] * s[i-j] = 0   for length <= i < s.size().
// last_update is the last index whose discrepancy changed the recurrence,
// -1 if the zero sequence fit throughout; terms after it confirm the result.
struct Recurrence {
    std::vector<Rat> connection{Rat(1)};
    int length = 0;
    int last_update = -1;
};
Recurrence minimal_recurrence(const QSeries& s);

// unique rational function matching the series through its full order, with
// minimal denominator degree. Requires series order >= max_num_deg +
// max_den_deg + 2: the Pade determination order plus two confirmation terms.
// Throws InsufficientData when the order is short or no recurrence fits the
// bounds, std::domain_error when the match has no integer-normalized form,
// std::invalid_argument when the constant term is not 1.
RationalFn reconstruct(const QSeries& series, int max_num_deg, int max_den_deg);

// alternating product over (m, det(1 - phi u) on cohomology in degree m):
// odd m contributes to the numerator, even m to the denominator, exponent
// (-1)^(m-1); the result is gcd-reduced. Factors need constant term 1.
RationalFn lfunction_from_cohomology(const std::vector<std::pair<int, IPoly>>& cx);

// power series of num/den through u^order
QSeries expand(const RationalFn& f, int order);

} // namespace zel::zetafn
