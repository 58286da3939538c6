#include "zel/zetafn.hpp"

#include <algorithm>

namespace zel::zetafn {

namespace {

using QPoly = std::vector<Rat>;

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int qdeg(const QPoly& p) {
    int d = static_cast<int>(p.size()) - 1;
    while (d >= 0 && p[static_cast<std::size_t>(d)] == 0) --d;
    return d; // -1 for the zero polynomial
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    qtrim(r);
    return r;
}

// remainder of a by b; b nonzero
QPoly qrem(QPoly a, const QPoly& b) {
    const int db = qdeg(b);
    for (int da = qdeg(a); da >= db; da = qdeg(a)) {
        Rat c = a[static_cast<std::size_t>(da)] / b[static_cast<std::size_t>(db)];
        for (int j = 0; j <= db; ++j)
            a[static_cast<std::size_t>(da - db + j)] -= c * b[static_cast<std::size_t>(j)];
        a[static_cast<std::size_t>(da)] = 0; // force exact cancellation of the lead
    }
    qtrim(a);
    return a;
}

// exact quotient a / b; remainder must vanish
QPoly qdiv_exact(QPoly a, const QPoly& b) {
    const int db = qdeg(b);
    const int da = qdeg(a);
    if (da < db) throw std::logic_error("qdiv_exact: inexact division");
    QPoly q(static_cast<std::size_t>(da - db + 1), Rat(0));
    for (int d = da; d >= db; d = qdeg(a)) {
        Rat c = a[static_cast<std::size_t>(d)] / b[static_cast<std::size_t>(db)];
        q[static_cast<std::size_t>(d - db)] = c;
        for (int j = 0; j <= db; ++j)
            a[static_cast<std::size_t>(d - db + j)] -= c * b[static_cast<std::size_t>(j)];
        a[static_cast<std::size_t>(d)] = 0;
    }
    qtrim(a);
    if (!a.empty()) throw std::logic_error("qdiv_exact: inexact division");
    return q;
}

// monic gcd over Q
QPoly qgcd(QPoly a, QPoly b) {
    qtrim(a);
    qtrim(b);
    while (!b.empty()) {
        QPoly r = qrem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

bool is_integer(const Rat& r) { return boost::multiprecision::denominator(r) == 1; }

QPoly to_qpoly(const IPoly& p) {
    QPoly r;
    r.reserve(p.size());
    for (const auto& c : p) r.emplace_back(c);
    return r;
}

// gcd-reduce num/den and scale both constant terms to 1; coefficients must come
// out integral (they do whenever the input expands a zeta-type series)
RationalFn normalize(QPoly num, QPoly den) {
    qtrim(num);
    qtrim(den);
    QPoly g = qgcd(num, den);
    if (qdeg(g) > 0) {
        num = qdiv_exact(num, g);
        den = qdiv_exact(den, g);
    }
    if (num.empty() || den.empty() || num[0] == 0 || den[0] == 0)
        throw std::domain_error("rational function has no constant-term-1 normalization");
    Rat scale = den[0];
    RationalFn f;
    f.num.clear();
    f.den.clear();
    for (auto& c : num) {
        Rat v = c / scale;
        if (!is_integer(v))
            throw std::domain_error("rational function has no integer-normalized form");
        f.num.push_back(Int(boost::multiprecision::numerator(v)));
    }
    for (auto& c : den) {
        Rat v = c / scale;
        if (!is_integer(v))
            throw std::domain_error("rational function has no integer-normalized form");
        f.den.push_back(Int(boost::multiprecision::numerator(v)));
    }
    if (f.num[0] != 1 || f.den[0] != 1)
        throw std::domain_error("rational function has no constant-term-1 normalization");
    return f;
}

} // namespace

QSeries zeta_series(const std::vector<Int>& counts, int N) {
    if (N < 0) throw std::invalid_argument("zeta_series: negative order");
    if (static_cast<int>(counts.size()) < N)
        throw std::invalid_argument("zeta_series: fewer counts than the requested order");
    QSeries z(static_cast<std::size_t>(N) + 1, Rat(0));
    z[0] = 1;
    for (int m = 1; m <= N; ++m) {
        Rat acc = 0;
        for (int i = 1; i <= m; ++i)
            acc += Rat(counts[static_cast<std::size_t>(i - 1)]) * z[static_cast<std::size_t>(m - i)];
        acc /= m;
        if (!is_integer(acc) || acc < 0)
            throw std::domain_error("zeta_series: inconsistent input counts (coefficient of u^" +
                                    std::to_string(m) + " is not a non-negative integer)");
        z[static_cast<std::size_t>(m)] = acc;
    }
    return z;
}

QSeries euler_product(const std::vector<LocalFactor>& points, int cover, int N) {
    if (N < 0) throw std::invalid_argument("euler_product: negative order");
    if (cover < N)
        throw std::invalid_argument("euler_product: point list only covers degree " +
                                    std::to_string(cover) + ", order " + std::to_string(N) +
                                    " requested");
    QSeries s(static_cast<std::size_t>(N) + 1, Rat(0));
    s[0] = 1;
    for (const auto& pt : points) {
        if (pt.degree < 1) throw std::invalid_argument("euler_product: point degree must be >= 1");
        const IPoly& f = pt.factor.empty() ? IPoly{Int(1), Int(-1)} : pt.factor;
        if (f[0] != 1)
            throw std::invalid_argument("euler_product: local factor constant term must be 1");
        if (pt.degree > N) continue; // first contribution lies beyond the truncation
        // P(u) = f(u^degree), sparse in u
        QSeries P(static_cast<std::size_t>(N) + 1, Rat(0));
        for (std::size_t j = 0; j < f.size(); ++j) {
            const std::size_t e = j * static_cast<std::size_t>(pt.degree);
            if (e > static_cast<std::size_t>(N)) break;
            P[e] = Rat(f[j]);
        }
        // divide the running series by P in place: s[m] -= sum P[j] s[m-j]
        for (int m = 0; m <= N; ++m)
            for (int j = 1; j <= m; ++j)
                s[static_cast<std::size_t>(m)] -=
                    P[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(m - j)];
    }
    return s;
}

Recurrence minimal_recurrence(const QSeries& s) {
    Recurrence r;
    std::vector<Rat> B{Rat(1)};
    Rat b = 1;
    int m = 1;
    for (int i = 0; i < static_cast<int>(s.size()); ++i) {
        Rat delta = s[static_cast<std::size_t>(i)];
        for (int j = 1; j <= r.length && j < static_cast<int>(r.connection.size()); ++j)
            delta += r.connection[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(i - j)];
        if (delta == 0) {
            ++m;
            continue;
        }
        r.last_update = i;
        const Rat coef = delta / b;
        if (2 * r.length <= i) {
            std::vector<Rat> keep = r.connection;
            if (r.connection.size() < B.size() + static_cast<std::size_t>(m))
                r.connection.resize(B.size() + static_cast<std::size_t>(m), Rat(0));
            for (std::size_t j = 0; j < B.size(); ++j)
                r.connection[j + static_cast<std::size_t>(m)] -= coef * B[j];
            r.length = i + 1 - r.length;
            B = std::move(keep);
            b = delta;
            m = 1;
        } else {
            if (r.connection.size() < B.size() + static_cast<std::size_t>(m))
                r.connection.resize(B.size() + static_cast<std::size_t>(m), Rat(0));
            for (std::size_t j = 0; j < B.size(); ++j)
                r.connection[j + static_cast<std::size_t>(m)] -= coef * B[j];
            ++m;
        }
    }
    qtrim(r.connection);
    if (r.connection.empty()) r.connection = {Rat(1)};
    return r;
}

RationalFn reconstruct(const QSeries& series, int max_num_deg, int max_den_deg) {
    if (series.empty()) throw std::invalid_argument("reconstruct: empty series");
    if (max_num_deg < 0 || max_den_deg < 0)
        throw std::invalid_argument("reconstruct: negative degree bound");
    if (series[0] != 1) throw std::invalid_argument("reconstruct: series constant term must be 1");
    const int order = static_cast<int>(series.size()) - 1;
    const int required = max_num_deg + max_den_deg + 2;
    if (order < required)
        throw InsufficientData(required - order,
                               "insufficient data: series order " + std::to_string(order) +
                                   ", bounds need " + std::to_string(required) + " (" +
                                   std::to_string(required - order) + " more term(s))");

    Recurrence rec = minimal_recurrence(series);
    const QPoly& den = rec.connection;
    // numerator = series * connection; the recurrence zeroes every index >= length
    QPoly num(static_cast<std::size_t>(rec.length), Rat(0));
    for (std::size_t i = 0; i < num.size(); ++i)
        for (std::size_t j = 0; j <= i && j < den.size(); ++j) num[i] += den[j] * series[i - j];
    qtrim(num);

    const int nd = qdeg(num);
    const int dd = qdeg(den);
    if (nd > max_num_deg || dd > max_den_deg) {
        const int confirm_at = nd + dd + 2;
        throw InsufficientData(std::max(0, confirm_at - order),
                               "insufficient data: no recurrence within bounds (" +
                                   std::to_string(max_num_deg) + ", " + std::to_string(max_den_deg) +
                                   "); minimal match has degrees (" + std::to_string(nd) + ", " +
                                   std::to_string(dd) + ")");
    }
    return normalize(std::move(num), den);
}

RationalFn lfunction_from_cohomology(const std::vector<std::pair<int, IPoly>>& cx) {
    QPoly num{Rat(1)};
    QPoly den{Rat(1)};
    for (const auto& [m, factor] : cx) {
        if (factor.empty() || factor[0] != 1)
            throw std::invalid_argument("lfunction_from_cohomology: factor constant term must be 1");
        // exponent (-1)^(m-1): odd m multiplies the numerator
        QPoly& side = (m % 2 != 0) ? num : den;
        side = qmul(side, to_qpoly(factor));
    }
    return normalize(std::move(num), std::move(den));
}

QSeries expand(const RationalFn& f, int order) {
    if (order < 0) throw std::invalid_argument("expand: negative order");
    if (f.den.empty() || f.den[0] != 1) throw std::invalid_argument("expand: denominator constant term must be 1");
    QSeries s(static_cast<std::size_t>(order) + 1, Rat(0));
    for (std::size_t i = 0; i < f.num.size() && i <= static_cast<std::size_t>(order); ++i)
        s[i] = Rat(f.num[i]);
    for (int m = 0; m <= order; ++m)
        for (int j = 1; j <= m && j < static_cast<int>(f.den.size()); ++j)
            s[static_cast<std::size_t>(m)] -=
                Rat(f.den[static_cast<std::size_t>(j)]) * s[static_cast<std::size_t>(m - j)];
    return s;
}

} // namespace zel::zetafn
