#pragma once

// Division-free characteristic polynomials (Berkowitz) over a commutative
// ring supplied as a ring object: { Elt, zero(), one(), add, sub, mul }.
// Works uniformly over Z, Z/p^k lifts, and cyclic group rings, which is the
// point: determinants of 1 - phi have to be computed in rings with zero
// divisors where Gaussian elimination is unavailable.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "zel/ints.hpp"

namespace zel::matrix {

template <class Elt>
using Mat = std::vector<std::vector<Elt>>;

struct IntRing {
    using Elt = Int;
    Elt zero() const { return Elt(0); }
    Elt one() const { return Elt(1); }
    Elt add(const Elt& a, const Elt& b) const { return a + b; }
    Elt sub(const Elt& a, const Elt& b) const { return a - b; }
    Elt mul(const Elt& a, const Elt& b) const { return a * b; }
};

// Coefficients of det(I - A t), ascending in t, length n + 1.  Constant term
// is always 1; the degree-n coefficient is (-1)^n det(A).
template <class Ring>
std::vector<typename Ring::Elt> charpoly_one_minus(const Ring& R,
                                                   const Mat<typename Ring::Elt>& A) {
    using Elt = typename Ring::Elt;
    const std::size_t n = A.size();
    for (const auto& row : A)
        if (row.size() != n) throw std::invalid_argument("charpoly_one_minus: matrix not square");

    // Berkowitz iterates over leading principal minors.  For the r x r minor
    // with block form [[M, S], [Rv, d]] the column vector
    //   c = (1, -d, -(Rv S), -(Rv M S), -(Rv M^2 S), ...)
    // is the new factor; the running vector V is multiplied by the Toeplitz
    // matrix of c.  V stays the ascending coefficient list of det(I - A t)
    // restricted to the processed minor.
    std::vector<Elt> V{R.one()};
    for (std::size_t r = 1; r <= n; ++r) {
        std::vector<Elt> c(r + 1, R.zero());
        c[0] = R.one();
        c[1] = R.sub(R.zero(), A[r - 1][r - 1]);
        if (r >= 2) {
            std::vector<Elt> w(r - 1);
            for (std::size_t i = 0; i + 1 < r; ++i) w[i] = A[i][r - 1];
            for (std::size_t i = 2; i <= r; ++i) {
                Elt dot = R.zero();
                for (std::size_t j = 0; j + 1 < r; ++j)
                    dot = R.add(dot, R.mul(A[r - 1][j], w[j]));
                c[i] = R.sub(R.zero(), dot);
                if (i < r) {
                    std::vector<Elt> w2(r - 1, R.zero());
                    for (std::size_t a = 0; a + 1 < r; ++a)
                        for (std::size_t b = 0; b + 1 < r; ++b)
                            w2[a] = R.add(w2[a], R.mul(A[a][b], w[b]));
                    w = std::move(w2);
                }
            }
        }
        std::vector<Elt> Vnew(r + 1, R.zero());
        for (std::size_t i = 0; i <= r; ++i)
            for (std::size_t j = 0; j < V.size() && j <= i; ++j)
                Vnew[i] = R.add(Vnew[i], R.mul(c[i - j], V[j]));
        V = std::move(Vnew);
    }
    return V;
}

// det(I - A), i.e. the charpoly above evaluated at t = 1.
template <class Ring>
typename Ring::Elt det_one_minus(const Ring& R, const Mat<typename Ring::Elt>& A) {
    auto V = charpoly_one_minus(R, A);
    auto s = R.zero();
    for (const auto& v : V) s = R.add(s, v);
    return s;
}

// det(A) = (-1)^n [t^n] det(I - A t).
template <class Ring>
typename Ring::Elt det(const Ring& R, const Mat<typename Ring::Elt>& A) {
    auto V = charpoly_one_minus(R, A);
    return A.size() % 2 == 0 ? V.back() : R.sub(R.zero(), V.back());
}

}  // namespace zel::matrix
