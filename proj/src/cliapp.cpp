#include "zel/cliapp.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"
#include "zel/cache.hpp"
#include "zel/report.hpp"
#include "zel/schemefile.hpp"
#include "zel/zetael.hpp"
#include "zel/zetafn.hpp"

namespace zel::cli {

namespace {

using nlohmann::ordered_json;
using zetael::LevelSpec;
using zetael::PhiModule;
using zetael::PointsScheme;
using zetael::SiteObject;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// counts for n = 1..N, fetched one extension at a time so a budget refusal
// leaves the affordable prefix usable
struct Counter {
    const variety::SchemeSpec& s;
    std::uint64_t budget;
    cache::CountCache* cache;
    std::vector<Int> counts;

    void ensure(int upto) {
        for (int n = static_cast<int>(counts.size()) + 1; n <= upto; ++n) {
            if (cache) {
                if (auto hit = cache->get(n)) {
                    counts.push_back(*hit);
                    continue;
                }
            }
            Int c = variety::count_points(s, n, budget);
            if (cache) cache->put(n, c);
            counts.push_back(c);
        }
    }
};

// --verify-cache: recompute the smallest record already on disk and compare
// before the rest of the file is trusted; silent when clean so cached and
// uncached runs emit identical output
std::optional<std::string> spot_check(const variety::SchemeSpec& s, const JobConfig& cfg,
                                      cache::CountCache& cc) {
    if (!cfg.verify_cache) return std::nullopt;
    const auto rec = cc.first_record();
    if (!rec) return std::nullopt;
    const Int fresh = variety::count_points(s, rec->first, cfg.budget);
    if (rec->second == fresh) return std::nullopt;
    return "cache verification failed for n=" + std::to_string(rec->first) + ": cached " +
           to_dec(rec->second) + ", recomputed " + to_dec(fresh);
}

std::string poly_str(const zetafn::IPoly& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        const bool neg = p[i] < 0;
        Int a = neg ? Int(-p[i]) : p[i];
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (a != 1 || i == 0) s += to_dec(a);
        if (i >= 1) {
            s += "u";
            if (i >= 2) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

std::string rat_str(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

ordered_json ipoly_json(const zetafn::IPoly& p) {
    ordered_json a = ordered_json::array();
    for (const Int& c : p) a.push_back(to_dec(c));
    return a;
}

matrix::Mat<Int> mat_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw UsageError("a matrix must be a JSON array of rows");
    matrix::Mat<Int> m;
    for (const auto& row : j) {
        if (!row.is_array()) throw UsageError("a matrix row must be a JSON array");
        std::vector<Int> r;
        for (const auto& e : row) {
            if (e.is_number_integer())
                r.emplace_back(e.get<long long>());
            else if (e.is_string())
                r.emplace_back(Int(e.get<std::string>()));
            else
                throw UsageError("matrix entries must be integers (or decimal strings)");
        }
        m.push_back(std::move(r));
    }
    return m;
}

void need_level_prime(const JobConfig& cfg) {
    if (cfg.p <= 0) throw UsageError("this command needs --p");
    if (cfg.k < 1) throw UsageError("--k must be at least 1");
}

SiteObject site_from_config(const JobConfig& cfg) {
    if (!cfg.name.empty()) return zetael::validated_catalog_entry(cfg.name, cfg.ch, cfg.fdeg);
    if (cfg.phi_inline.empty()) throw UsageError("this command needs --phi or --name");
    const nlohmann::json j = nlohmann::json::parse(cfg.phi_inline);
    PointsScheme pts;
    if (j.is_array()) {
        pts.components.push_back(
            {cfg.deg, zetael::make_phi_module(cfg.p, cfg.k, mat_from_json(j))});
    } else if (j.is_object() && j.contains("components")) {
        for (const auto& c : j.at("components")) {
            const int d = c.value("degree", 1);
            pts.components.push_back(
                {d, zetael::make_phi_module(cfg.p, cfg.k, mat_from_json(c.at("phi")))});
        }
    } else {
        throw UsageError("--phi takes a matrix or {\"components\":[{\"degree\":d,\"phi\":M}]}");
    }
    return pts;
}

// parameters echoed into structured documents; cache and format flags are
// deliberately excluded so cached and uncached runs stay byte-identical
ordered_json params_json(const JobConfig& cfg) {
    ordered_json p;
    if (!cfg.identity.empty()) p["identity"] = cfg.identity;
    if (!cfg.scheme_path.empty()) p["scheme"] = cfg.scheme_path;
    if (!cfg.phi_inline.empty()) p["phi"] = cfg.phi_inline;
    if (!cfg.name.empty()) {
        p["name"] = cfg.name;
        p["ch"] = cfg.ch;
        p["fdeg"] = cfg.fdeg;
    }
    if (cfg.p > 0) {
        p["p"] = cfg.p;
        p["k"] = cfg.k;
    }
    if (cfg.n) p["n"] = *cfg.n;
    if (cfg.n2) p["n2"] = *cfg.n2;
    if (cfg.deg != 1) p["deg"] = cfg.deg;
    if (!cfg.chain.empty()) p["chain"] = cfg.chain;
    if (cfg.N > 0) p["N"] = cfg.N;
    if (cfg.command == "count" || cfg.command == "zeta" || cfg.command == "euler")
        p["budget"] = cfg.budget;
    if (cfg.seed) {
        p["seed"] = *cfg.seed;
        p["batch"] = cfg.batch;
    }
    return p;
}

JobResult render_reports(const JobConfig& cfg, const std::vector<report::CheckReport>& reports) {
    const bool any_fail =
        std::any_of(reports.begin(), reports.end(),
                    [](const report::CheckReport& r) { return r.verdict == report::Verdict::Fail; });
    std::ostringstream out;
    if (cfg.format == "structured") {
        out << report::make_document(cfg.command, params_json(cfg), reports).dump(2) << "\n";
    } else {
        for (const auto& r : reports) out << report::to_text(r) << "\n";
    }
    return {any_fail ? 1 : 0, out.str()};
}

JobResult render_result(const JobConfig& cfg, const std::string& text,
                        const ordered_json& result) {
    if (cfg.format == "structured") {
        return {0, report::make_document(cfg.command, params_json(cfg), result).dump(2) + "\n"};
    }
    return {0, text};
}

// ---- count ----------------------------------------------------------------

JobResult cmd_count(const JobConfig& cfg) {
    if (cfg.scheme_path.empty()) throw UsageError("count needs --scheme");
    const variety::SchemeSpec s = schemefile::load_scheme_file(cfg.scheme_path);
    const std::uint64_t dg = schemefile::digest(s);
    const int N = cfg.N > 0 ? cfg.N : 4;

    std::optional<cache::CountCache> cc;
    if (!cfg.cache_dir.empty()) cc.emplace(cfg.cache_dir, dg);
    if (cc) {
        if (auto bad = spot_check(s, cfg, *cc)) return {1, "error: " + *bad + "\n"};
    }
    Counter counter{s, cfg.budget, cc ? &*cc : nullptr, {}};
    counter.ensure(N);

    std::ostringstream text;
    text << "digest " << cache::digest_hex(dg) << "\n";
    ordered_json counts = ordered_json::array();
    for (int n = 1; n <= N; ++n) {
        text << n << " " << to_dec(counter.counts[static_cast<std::size_t>(n - 1)]) << "\n";
        ordered_json row;
        row["n"] = n;
        row["count"] = to_dec(counter.counts[static_cast<std::size_t>(n - 1)]);
        counts.push_back(row);
    }
    ordered_json result;
    result["digest"] = cache::digest_hex(dg);
    result["counts"] = counts;
    return render_result(cfg, text.str(), result);
}

// ---- zeta -----------------------------------------------------------------

JobResult cmd_zeta(const JobConfig& cfg) {
    if (cfg.scheme_path.empty()) throw UsageError("zeta needs --scheme");
    const variety::SchemeSpec s = schemefile::load_scheme_file(cfg.scheme_path);
    const std::uint64_t dg = schemefile::digest(s);

    std::optional<cache::CountCache> cc;
    if (!cfg.cache_dir.empty()) cc.emplace(cfg.cache_dir, dg);
    if (cc) {
        if (auto bad = spot_check(s, cfg, *cc)) return {1, "error: " + *bad + "\n"};
    }
    Counter counter{s, cfg.budget, cc ? &*cc : nullptr, {}};

    std::optional<zetafn::RationalFn> fn;
    int used = 0;
    bool budget_hit = false;

    // widen the degree bounds until the reconstruction also explains two
    // extra counts beyond what the determination consumed
    for (int bound = 2; bound <= 32 && !fn; bound *= 2) {
        const int base = 2 * bound + 2;
        const int need = base + 2;
        try {
            counter.ensure(need);
        } catch (const variety::BudgetExceeded&) {
            budget_hit = true;
            break;
        }
        const zetafn::QSeries full = zetafn::zeta_series(counter.counts, need);
        const zetafn::QSeries head(full.begin(), full.begin() + base + 1);
        try {
            zetafn::RationalFn f = zetafn::reconstruct(head, bound, bound);
            if (zetafn::expand(f, need) == full) {
                fn = f;
                used = need;
            }
        } catch (const zetafn::InsufficientData&) {
        } catch (const std::domain_error&) {
        }
    }

    if (!fn && budget_hit) {
        // pin the degrees from the affordable prefix instead
        const int M = static_cast<int>(counter.counts.size());
        if (M >= 6) {
            const zetafn::QSeries series = zetafn::zeta_series(counter.counts, M);
            const zetafn::Recurrence rec = zetafn::minimal_recurrence(series);
            const int den_deg = rec.length;
            const int num_deg = M - den_deg - 2;
            if (num_deg >= 0) {
                try {
                    fn = zetafn::reconstruct(series, num_deg, den_deg);
                    used = M;
                } catch (const zetafn::InsufficientData&) {
                } catch (const std::domain_error&) {
                }
            }
        }
        if (!fn)
            throw UsageError("budget too small to pin down the zeta function (counted " +
                             std::to_string(M) + " extensions)");
    }
    if (!fn) throw UsageError("counts do not fit a rational function within degree bounds 32/32");

    const int spare =
        used - static_cast<int>(fn->num.size() - 1) - static_cast<int>(fn->den.size() - 1);
    std::ostringstream text;
    text << "digest " << cache::digest_hex(dg) << "\n";
    text << "zeta = (" << poly_str(fn->num) << ") / (" << poly_str(fn->den) << ")\n";
    text << "counts used: " << used << "\n";
    text << "confirmation: " << spare << " coefficients beyond determination\n";

    ordered_json result;
    result["digest"] = cache::digest_hex(dg);
    result["num"] = ipoly_json(fn->num);
    result["den"] = ipoly_json(fn->den);
    result["counts_used"] = used;
    result["confirmation_terms"] = spare;
    return render_result(cfg, text.str(), result);
}

// ---- euler ----------------------------------------------------------------

JobResult cmd_euler(const JobConfig& cfg) {
    if (cfg.scheme_path.empty()) throw UsageError("euler needs --scheme");
    const variety::SchemeSpec s = schemefile::load_scheme_file(cfg.scheme_path);
    const std::uint64_t dg = schemefile::digest(s);
    const int N = cfg.N > 0 ? cfg.N : 6;

    const std::vector<variety::ClosedPoint> pts = variety::closed_points(s, N, cfg.budget);
    std::vector<zetafn::LocalFactor> locals;
    locals.reserve(pts.size());
    std::map<int, int> by_degree;
    for (const auto& pt : pts) {
        locals.push_back({pt.degree, {}});
        by_degree[pt.degree]++;
    }
    const zetafn::QSeries product = zetafn::euler_product(locals, N, N);

    std::optional<cache::CountCache> cc;
    if (!cfg.cache_dir.empty()) cc.emplace(cfg.cache_dir, dg);
    if (cc) {
        if (auto bad = spot_check(s, cfg, *cc)) return {1, "error: " + *bad + "\n"};
    }
    Counter counter{s, cfg.budget, cc ? &*cc : nullptr, {}};
    counter.ensure(N);
    const zetafn::QSeries from_counts = zetafn::zeta_series(counter.counts, N);
    const bool match = product == from_counts;

    std::ostringstream text;
    text << "digest " << cache::digest_hex(dg) << "\n";
    text << "closed points:";
    for (const auto& [d, c] : by_degree) text << " deg" << d << ":" << c;
    text << "\nseries:";
    for (const Rat& c : product) text << " " << rat_str(c);
    text << "\nmatches counts to order " << N << ": " << (match ? "yes" : "NO") << "\n";

    ordered_json result;
    result["digest"] = cache::digest_hex(dg);
    result["order"] = N;
    ordered_json cp = ordered_json::array();
    for (const auto& [d, c] : by_degree) {
        ordered_json row;
        row["degree"] = d;
        row["points"] = c;
        cp.push_back(row);
    }
    result["closed_points"] = cp;
    ordered_json series = ordered_json::array();
    for (const Rat& c : product) series.push_back(rat_str(c));
    result["series"] = series;
    result["matches_counts"] = match;

    JobResult r = render_result(cfg, text.str(), result);
    if (!match) r.exit_code = 1;
    return r;
}

// ---- verify ---------------------------------------------------------------

matrix::Mat<Int> random_mat(std::mt19937_64& rng, int rank, const Int& pk) {
    std::uniform_int_distribution<unsigned long long> d(0, 1ull << 62);
    matrix::Mat<Int> m(static_cast<std::size_t>(rank),
                       std::vector<Int>(static_cast<std::size_t>(rank)));
    for (auto& row : m)
        for (auto& e : row) e = imod(Int(d(rng)), pk);
    return m;
}

// random module over Z/p^k; with unit_one_minus also det(1 - phi) must be a
// unit, which is what the plain-value identity needs to be conclusive
PhiModule random_module(std::mt19937_64& rng, std::int64_t p, int k, int max_rank,
                        bool unit_one_minus) {
    const int rank = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_rank));
    const Int pk = ipow(Int(p), static_cast<unsigned>(k));
    for (;;) {
        try {
            PhiModule m = zetael::make_phi_module(p, k, random_mat(rng, rank, pk));
            if (unit_one_minus &&
                imod(matrix::det_one_minus(matrix::IntRing{}, m.phi), Int(p)) == 0)
                continue;
            return m;
        } catch (const std::invalid_argument&) {
            // det(phi) was divisible by p; redraw
        }
    }
}

PointsScheme random_points(std::mt19937_64& rng, std::int64_t p, int k) {
    PointsScheme pts;
    const int parts = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < parts; ++i) {
        const int d = 1 + static_cast<int>(rng() % 3);
        pts.components.push_back({d, random_module(rng, p, k, 2, false)});
    }
    return pts;
}

int default_smaller_level(int n) {
    for (int f = 2; f <= n; ++f)
        if (n % f == 0) return n / f;
    throw UsageError("--n2 is needed: " + std::to_string(n) + " has no proper divisor");
}

report::CheckReport run_identity_once(const JobConfig& cfg, const SiteObject& obj) {
    if (cfg.identity == "1.3.5") {
        if (!cfg.n) throw UsageError("identity 1.3.5 needs --n");
        return zetael::verify_zeta_eq_element(obj, cfg.p, cfg.k, *cfg.n);
    }
    if (cfg.identity == "1.3.6") return zetael::verify_zeta_value(obj, cfg.p, cfg.k);
    if (cfg.identity == "2.1.3") {
        if (!cfg.n) throw UsageError("identity 2.1.3 needs --n");
        const int small = cfg.n2 ? *cfg.n2 : default_smaller_level(*cfg.n);
        return zetael::verify_base_change(obj, cfg.p, cfg.k, *cfg.n, small);
    }
    if (cfg.identity == "norm") {
        if (cfg.chain.empty()) throw UsageError("identity norm needs --chain");
        return zetael::verify_norm_system(obj, cfg.p, cfg.k, cfg.chain);
    }
    throw UsageError("identity " + cfg.identity + " does not take a site object");
}

std::vector<report::CheckReport> verify_batch(const JobConfig& cfg) {
    std::mt19937_64 rng(*cfg.seed);
    const LevelSpec level{cfg.p, cfg.k, cfg.n};
    std::vector<report::CheckReport> out;
    out.reserve(static_cast<std::size_t>(cfg.batch));
    for (int i = 0; i < cfg.batch; ++i) {
        report::CheckReport r;
        if (cfg.identity == "1.3.5") {
            if (!cfg.n) throw UsageError("identity 1.3.5 needs --n");
            r = zetael::verify_zeta_eq_element(random_points(rng, cfg.p, cfg.k), cfg.p, cfg.k,
                                               *cfg.n);
        } else if (cfg.identity == "1.3.6") {
            r = zetael::verify_zeta_value(
                SiteObject{PointsScheme{{{1, random_module(rng, cfg.p, cfg.k, 4, true)}}}},
                cfg.p, cfg.k);
        } else if (cfg.identity == "2.1.3") {
            if (!cfg.n) throw UsageError("identity 2.1.3 needs --n");
            const int small = cfg.n2 ? *cfg.n2 : default_smaller_level(*cfg.n);
            r = zetael::verify_base_change(
                SiteObject{PointsScheme{{{1 + static_cast<int>(rng() % 2),
                                          random_module(rng, cfg.p, cfg.k, 3, false)}}}},
                cfg.p, cfg.k, *cfg.n, small);
        } else if (cfg.identity == "2.1.4") {
            const PhiModule sub = random_module(rng, cfg.p, cfg.k, 2, false);
            const PhiModule quot = random_module(rng, cfg.p, cfg.k, 2, false);
            const Int pk = ipow(Int(cfg.p), static_cast<unsigned>(cfg.k));
            matrix::Mat<Int> t(static_cast<std::size_t>(sub.rank + quot.rank),
                               std::vector<Int>(static_cast<std::size_t>(sub.rank + quot.rank),
                                                Int(0)));
            for (int a = 0; a < sub.rank; ++a)
                for (int b = 0; b < sub.rank; ++b) t[a][b] = sub.phi[a][b];
            for (int a = 0; a < quot.rank; ++a)
                for (int b = 0; b < quot.rank; ++b) t[sub.rank + a][sub.rank + b] = quot.phi[a][b];
            for (int a = 0; a < sub.rank; ++a)
                for (int b = 0; b < quot.rank; ++b)
                    t[a][sub.rank + b] = imod(Int(static_cast<long long>(rng())), pk);
            r = zetael::verify_triangle(sub, zetael::make_phi_module(cfg.p, cfg.k, t), quot,
                                        level);
        } else if (cfg.identity == "2.1.5") {
            const int d = 1 + static_cast<int>(rng() % 6);
            r = zetael::verify_pushforward(d, random_module(rng, cfg.p, cfg.k, 3, false), level);
        } else if (cfg.identity == "norm") {
            if (cfg.chain.empty()) throw UsageError("identity norm needs --chain");
            r = zetael::verify_norm_system(
                SiteObject{PointsScheme{{{1, random_module(rng, cfg.p, cfg.k, 2, false)}}}},
                cfg.p, cfg.k, cfg.chain);
        } else {
            throw UsageError("unknown identity " + cfg.identity);
        }
        r.seed = *cfg.seed;
        out.push_back(std::move(r));
    }
    return out;
}

JobResult cmd_verify(const JobConfig& cfg) {
    need_level_prime(cfg);
    std::vector<report::CheckReport> reports;
    if (cfg.seed) {
        reports = verify_batch(cfg);
    } else if (cfg.identity == "2.1.4") {
        if (cfg.phi_inline.empty())
            throw UsageError("identity 2.1.4 needs --phi with {\"sub\":A,\"total\":B,\"quot\":C}");
        const nlohmann::json j = nlohmann::json::parse(cfg.phi_inline);
        if (!j.is_object() || !j.contains("sub") || !j.contains("total") || !j.contains("quot"))
            throw UsageError("identity 2.1.4 needs --phi with {\"sub\":A,\"total\":B,\"quot\":C}");
        reports.push_back(zetael::verify_triangle(
            zetael::make_phi_module(cfg.p, cfg.k, mat_from_json(j.at("sub"))),
            zetael::make_phi_module(cfg.p, cfg.k, mat_from_json(j.at("total"))),
            zetael::make_phi_module(cfg.p, cfg.k, mat_from_json(j.at("quot"))),
            LevelSpec{cfg.p, cfg.k, cfg.n}));
    } else if (cfg.identity == "2.1.5") {
        if (cfg.phi_inline.empty()) throw UsageError("identity 2.1.5 needs --phi with a matrix");
        const nlohmann::json j = nlohmann::json::parse(cfg.phi_inline);
        reports.push_back(zetael::verify_pushforward(
            cfg.deg, zetael::make_phi_module(cfg.p, cfg.k, mat_from_json(j)),
            LevelSpec{cfg.p, cfg.k, cfg.n}));
    } else {
        reports.push_back(run_identity_once(cfg, site_from_config(cfg)));
    }
    return render_reports(cfg, reports);
}

// ---- catalog --------------------------------------------------------------

JobResult cmd_catalog(const JobConfig& cfg) {
    std::vector<report::CheckReport> reports;
    if (!cfg.name.empty()) {
        reports.push_back(zetael::validate_catalog(cfg.name, cfg.ch, cfg.fdeg));
    } else {
        for (const std::string& name : zetael::catalog_names()) {
            // stocked curves carry their own base characteristic in the name
            std::int64_t ch = cfg.ch;
            int fdeg = cfg.fdeg;
            if (name.rfind("elliptic(", 0) == 0) {
                ch = name[9] - '0';
                fdeg = 1;
            }
            reports.push_back(zetael::validate_catalog(name, ch, fdeg));
        }
    }
    return render_reports(cfg, reports);
}

} // namespace

JobResult run_job(const JobConfig& cfg) {
    try {
        if (cfg.command == "count") return cmd_count(cfg);
        if (cfg.command == "zeta") return cmd_zeta(cfg);
        if (cfg.command == "euler") return cmd_euler(cfg);
        if (cfg.command == "verify") return cmd_verify(cfg);
        if (cfg.command == "catalog") return cmd_catalog(cfg);
        return {2, "error: unknown command '" + cfg.command + "'\n"};
    } catch (const schemefile::ParseError& e) {
        return {2, std::string("error: scheme parse error at ") + e.what() + "\n"};
    } catch (const variety::BudgetExceeded& e) {
        return {2, std::string("error: ") + e.what() + "\n"};
    } catch (const nlohmann::json::exception& e) {
        return {2, std::string("error: bad --phi JSON: ") + e.what() + "\n"};
    } catch (const UsageError& e) {
        return {2, std::string("error: ") + e.what() + "\n"};
    } catch (const std::exception& e) {
        return {2, std::string("error: ") + e.what() + "\n"};
    }
}

} // namespace zel::cli
