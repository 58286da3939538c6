#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "zel/cache.hpp"
#include "zel/cliapp.hpp"
#include "zel/report.hpp"
#include "zel/schemefile.hpp"

using namespace zel;
using cli::JobConfig;
using cli::JobResult;

namespace {

std::string scheme_dir() {
    const char* d = std::getenv("ZEL_SCHEME_DIR");
    return d ? d : "schemes";
}

std::string scheme(const std::string& base) { return scheme_dir() + "/" + base + ".scheme"; }

// fresh directory under the system temp root, removed by the caller
std::string fresh_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("zel_test_" + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p.string();
}

JobConfig base_cfg(const std::string& command) {
    JobConfig cfg;
    cfg.command = command;
    return cfg;
}

int parse_error_line(const std::string& text) {
    try {
        (void)schemefile::parse_scheme(text);
    } catch (const schemefile::ParseError& e) {
        return e.line;
    }
    return -1;
}

int parse_error_column(const std::string& text) {
    try {
        (void)schemefile::parse_scheme(text);
    } catch (const schemefile::ParseError& e) {
        return e.column;
    }
    return -1;
}

} // namespace

TEST_CASE("scheme files parse into validated specs") {
    variety::SchemeSpec s = schemefile::parse_scheme(
        "# plane cubic\n"
        "base_char 2\n"
        "base_deg 1\n"
        "ambient projective 2\n"
        "equation x1^2*x2 + x1*x2^2 - x0^3\n");
    CHECK(s.base->ch == 2);
    CHECK(s.base->deg == 1);
    CHECK(s.ambient == variety::Ambient::Projective);
    CHECK(s.dim == 2);
    REQUIRE(s.equations.size() == 1);
    CHECK(s.equations[0].terms.size() == 3);
    CHECK(variety::count_points(s, 1) == 3);

    // integer coefficients reduce into the field: 3 == 1 over F_2
    variety::SchemeSpec t = schemefile::parse_scheme(
        "base_char 2\nbase_deg 1\nambient affine 1\nequation 3*x0 - 1\n");
    CHECK(variety::count_points(t, 1) == 1);

    // repeated variables multiply out, constants fold
    variety::SchemeSpec u = schemefile::parse_scheme(
        "base_char 5\nbase_deg 1\nambient affine 1\nequation 2*x0*x0*x0 + 2 + 1\n");
    CHECK(u.equations[0].terms.size() == 2);
    CHECK(u.equations[0].total_degree() == 3);
}

TEST_CASE("parse errors carry line and column") {
    // missing required header field, reported at end of input
    CHECK(parse_error_line("base_char 2\nbase_deg 1\n") == 3);

    const std::string good = "base_char 2\nbase_deg 1\nambient affine 1\n";
    CHECK(parse_error_line(good + "equation x0 +\n") == 4);
    CHECK(parse_error_line("base_char 2\nbase_char 3\n") == 2);
    CHECK(parse_error_column("base_char 2\nbase_char 3\n") == 1);
    CHECK(parse_error_line(good + "equation x9\n") == 4);
    CHECK(parse_error_column(good + "equation x9\n") == 10);
    CHECK(parse_error_column(good + "equation x0^900\n") == 13);
    CHECK(parse_error_line("base_char 2\nbase_deg 1\nambient weird 1\n") == 3);
    CHECK(parse_error_column("base_char 2\nbase_deg 1\nambient weird 1\n") == 9);
    CHECK(parse_error_line(good + "frobnicate 3\n") == 4);
    CHECK(parse_error_line(good + "equation x0 x1\n") == 4);
    CHECK(parse_error_line("base_char 2 extra\n") == 1);
    CHECK(parse_error_column("base_char 2 extra\n") == 13);
    CHECK(parse_error_line(good + "equation x0 @ x1\n") == 4);

    // semantic rejections come from the scheme validator, not the parser
    CHECK_THROWS_AS(
        (void)schemefile::parse_scheme("base_char 4\nbase_deg 1\nambient affine 1\n"),
        std::invalid_argument);
    CHECK_THROWS_AS((void)schemefile::parse_scheme(
                        "base_char 2\nbase_deg 1\nambient projective 1\nequation x0^2 + x1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)schemefile::parse_scheme(
                        "base_char 2\nbase_deg 1\nambient projective 1\ninequation x0\n"),
                    std::invalid_argument);
}

TEST_CASE("canonical serialization ignores formatting and ordering") {
    const std::string a =
        "base_char 2\nbase_deg 1\nambient projective 2\n"
        "equation x1^2*x2 + x1*x2^2 - x0^3\n";
    const std::string b =
        "# same curve, shuffled\n"
        "ambient   projective 2\n"
        "base_deg 1\n"
        "base_char 2\n\n"
        "equation -x0^3 + x2*x1^2 + x1*x2^2   # reordered terms\n";
    variety::SchemeSpec sa = schemefile::parse_scheme(a);
    variety::SchemeSpec sb = schemefile::parse_scheme(b);
    CHECK(schemefile::canonical_serialization(sa) == schemefile::canonical_serialization(sb));
    CHECK(schemefile::digest(sa) == schemefile::digest(sb));

    // equation order is immaterial, an extra equation is not
    const std::string two = "base_char 2\nbase_deg 1\nambient affine 2\n";
    variety::SchemeSpec s1 = schemefile::parse_scheme(two + "equation x0\nequation x1 + 1\n");
    variety::SchemeSpec s2 = schemefile::parse_scheme(two + "equation x1 + 1\nequation x0\n");
    variety::SchemeSpec s3 = schemefile::parse_scheme(two + "equation x0\n");
    CHECK(schemefile::digest(s1) == schemefile::digest(s2));
    CHECK(schemefile::digest(s1) != schemefile::digest(s3));

    // canonical text is versioned and complete
    const std::string ser = schemefile::canonical_serialization(sa);
    CHECK(ser.find("zel-scheme 1\n") == 0);
    CHECK(ser.find("ambient projective 2\n") != std::string::npos);
}

TEST_CASE("fnv1a64 matches the reference vectors") {
    CHECK(schemefile::fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(schemefile::fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(schemefile::fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("count cache stores and survives garbage") {
    const std::string dir = fresh_dir("cache");
    {
        cache::CountCache cc(dir, 0xabcdef);
        CHECK_FALSE(cc.get(1).has_value());
        cc.put(1, Int(3));
        cc.put(2, Int(5));
        CHECK(cc.get(1) == Int(3));
        CHECK(cc.hits().empty() == false);
    }
    {
        // reload from disk through a fresh instance
        cache::CountCache cc(dir, 0xabcdef);
        CHECK(cc.get(2) == Int(5));
        CHECK(cc.hits() == std::vector<int>{2});
    }
    {
        // unrelated digests see nothing
        cache::CountCache cc(dir, 0x123456);
        CHECK_FALSE(cc.get(1).has_value());
    }
    {
        // corrupt records are skipped, later duplicates win
        cache::CountCache probe(dir, 0xabcdef);
        std::ofstream out(probe.path(), std::ios::app);
        out << "not a record\n"
            << "3 12x4\n"
            << "-1 7\n"
            << "2 999\n"
            << "4 17 trailing\n";
        out.close();
        cache::CountCache cc(dir, 0xabcdef);
        CHECK(cc.get(2) == Int(999));
        CHECK_FALSE(cc.get(3).has_value());
        CHECK_FALSE(cc.get(4).has_value());
    }
    CHECK(cache::digest_hex(0) == "0000000000000000");
    CHECK(cache::digest_hex(0xdeadbeefull) == "00000000deadbeef");
    std::filesystem::remove_all(dir);
}

TEST_CASE("count command tabulates extensions") {
    JobConfig cfg = base_cfg("count");
    cfg.scheme_path = scheme("p1_f2");
    cfg.N = 3;
    JobResult r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("1 3\n") != std::string::npos);
    CHECK(r.output.find("2 5\n") != std::string::npos);
    CHECK(r.output.find("3 9\n") != std::string::npos);

    cfg.scheme_path = scheme("elliptic_f2");
    cfg.N = 4;
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("1 3\n") != std::string::npos);
    CHECK(r.output.find("2 9\n") != std::string::npos);
    CHECK(r.output.find("3 9\n") != std::string::npos);
    CHECK(r.output.find("4 9\n") != std::string::npos);

    cfg.scheme_path = scheme("empty_f2");
    cfg.N = 3;
    cfg.format = "structured";
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.output);
    for (const auto& row : doc["result"]["counts"]) CHECK(row["count"] == "0");
}

TEST_CASE("zeta command reconstructs rational functions") {
    JobConfig cfg = base_cfg("zeta");
    cfg.scheme_path = scheme("a1_f2");
    JobResult r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("zeta = (1) / (1 - 2u)") != std::string::npos);

    cfg.scheme_path = scheme("gm_f2");
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("zeta = (1 - u) / (1 - 2u)") != std::string::npos);

    cfg.scheme_path = scheme("p2_f3");
    cfg.format = "structured";
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["result"]["num"] == nlohmann::json::array({"1"}));
    // (1-u)(1-3u)(1-9u) = 1 - 13u + 39u^2 - 27u^3
    CHECK(doc["result"]["den"] == nlohmann::json::array({"1", "-13", "39", "-27"}));
    CHECK(doc["result"]["confirmation_terms"].get<int>() >= 2);
    CHECK(doc["convention"] == report::kConventionTag);

    cfg.scheme_path = scheme("elliptic_f2");
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    doc = nlohmann::json::parse(r.output);
    CHECK(doc["result"]["num"] == nlohmann::json::array({"1", "0", "2"}));
    CHECK(doc["result"]["den"] == nlohmann::json::array({"1", "-3", "2"}));
}

TEST_CASE("structured output is deterministic and cache-independent") {
    const std::string dir = fresh_dir("cachedet");
    JobConfig cfg = base_cfg("zeta");
    cfg.scheme_path = scheme("elliptic_f2");
    cfg.format = "structured";

    const JobResult plain1 = cli::run_job(cfg);
    const JobResult plain2 = cli::run_job(cfg);
    CHECK(plain1.output == plain2.output);

    cfg.cache_dir = dir;
    const JobResult cold = cli::run_job(cfg); // fills the cache
    const JobResult warm = cli::run_job(cfg); // reads it back
    CHECK(cold.output == plain1.output);
    CHECK(warm.output == plain1.output);
    CHECK(cold.exit_code == 0);
    CHECK(warm.exit_code == 0);

    // the cache file really exists and holds the counts
    variety::SchemeSpec s = schemefile::load_scheme_file(cfg.scheme_path);
    cache::CountCache cc(dir, schemefile::digest(s));
    CHECK(cc.get(1) == Int(3));
    CHECK(cc.get(4) == Int(9));

    // spot check passes on an honest cache
    cfg.verify_cache = true;
    const JobResult checked = cli::run_job(cfg);
    CHECK(checked.exit_code == 0);
    CHECK(checked.output == plain1.output);

    // poison the smallest record: the spot check must catch it
    {
        std::ifstream in(cc.path());
        std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        in.close();
        std::ofstream out(cc.path(), std::ios::app);
        out << "1 4\n"; // later record wins on load
    }
    const JobResult poisoned = cli::run_job(cfg);
    CHECK(poisoned.exit_code == 1);
    CHECK(poisoned.output.find("cache verification failed") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("euler command cross-checks the product against counts") {
    JobConfig cfg = base_cfg("euler");
    cfg.scheme_path = scheme("gm_f2");
    cfg.N = 6;
    JobResult r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("matches counts to order 6: yes") != std::string::npos);
    // one rational point, one closed point of degree 2 on the torus over F_2
    CHECK(r.output.find("deg1:1") != std::string::npos);
    CHECK(r.output.find("deg2:1") != std::string::npos);

    cfg.scheme_path = scheme("a1_f2");
    cfg.N = 8;
    cfg.format = "structured";
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["result"]["matches_counts"] == true);
    CHECK(doc["result"]["series"][1] == "2");
    CHECK(doc["result"]["series"][8] == "256");
}

TEST_CASE("verify command drives the identity checks") {
    JobConfig cfg = base_cfg("verify");
    cfg.identity = "1.3.6";
    cfg.phi_inline = "[[2]]";
    cfg.p = 5;
    cfg.k = 2;
    JobResult r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[Pass]") != std::string::npos);

    // an endomorphism fixing a vector has vanishing determinant at u = 1
    cfg.phi_inline = "[[1]]";
    cfg.identity = "1.3.5";
    cfg.n = 3;
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[Inconclusive]") != std::string::npos);

    cfg.identity = "norm";
    cfg.phi_inline = "[[2]]";
    cfg.n.reset();
    cfg.p = 11;
    cfg.chain = {1, 2, 6, 12};
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[Pass]") != std::string::npos);

    // at p = 5 the top level is a splitting level, so the last link cannot
    // be witnessed
    cfg.p = 5;
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[Inconclusive]") != std::string::npos);

    cfg.identity = "2.1.3";
    cfg.phi_inline = "[[2]]";
    cfg.p = 5;
    cfg.k = 3;
    cfg.n = 6; // the default coarser level is then 3
    cfg.chain.clear();
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[Pass]") != std::string::npos);

    cfg.identity = "2.1.5";
    cfg.deg = 2;
    cfg.n = 3;
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[Pass]") != std::string::npos);

    cfg.identity = "2.1.4";
    cfg.phi_inline = R"({"sub":[[2]],"total":[[2,1],[0,3]],"quot":[[3]]})";
    cfg.p = 7;
    cfg.k = 2;
    cfg.n = 4;
    cfg.deg = 1;
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[Pass]") != std::string::npos);

    // catalog object through --name
    cfg = base_cfg("verify");
    cfg.identity = "1.3.6";
    cfg.name = "A1";
    cfg.p = 5;
    cfg.k = 3;
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[Pass]") != std::string::npos);

    // multi-component inline object
    cfg = base_cfg("verify");
    cfg.identity = "1.3.5";
    cfg.phi_inline = R"({"components":[{"degree":1,"phi":[[2]]},{"degree":2,"phi":[[3]]}]})";
    cfg.p = 5;
    cfg.k = 2;
    cfg.n = 3;
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[Pass]") != std::string::npos);
}

TEST_CASE("seeded verify batches are replayable") {
    JobConfig cfg = base_cfg("verify");
    cfg.identity = "2.1.4";
    cfg.p = 5;
    cfg.k = 2;
    cfg.n = 3;
    cfg.seed = 42;
    cfg.batch = 10;
    cfg.format = "structured";
    JobResult a = cli::run_job(cfg);
    JobResult b = cli::run_job(cfg);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    auto doc = nlohmann::json::parse(a.output);
    REQUIRE(doc["reports"].size() == 10);
    for (const auto& rep : doc["reports"]) {
        CHECK(rep["verdict"] != "Fail");
        CHECK(rep["seed"] == 42);
    }
    CHECK(doc["parameters"]["seed"] == 42);

    cfg.seed = 43;
    JobResult c = cli::run_job(cfg);
    CHECK(c.output != a.output);

    // the value identity on conclusive draws passes throughout
    cfg = base_cfg("verify");
    cfg.identity = "1.3.6";
    cfg.p = 5;
    cfg.k = 4;
    cfg.seed = 7;
    cfg.batch = 12;
    cfg.format = "structured";
    JobResult v = cli::run_job(cfg);
    CHECK(v.exit_code == 0);
    doc = nlohmann::json::parse(v.output);
    for (const auto& rep : doc["reports"]) CHECK(rep["verdict"] == "Pass");

    // pushforward batch mixes primes and degrees without ever failing
    cfg.identity = "2.1.5";
    cfg.p = 7;
    cfg.k = 2;
    cfg.n = 6;
    cfg.seed = 99;
    cfg.batch = 15;
    JobResult pf = cli::run_job(cfg);
    CHECK(pf.exit_code == 0);
    doc = nlohmann::json::parse(pf.output);
    int passes = 0;
    for (const auto& rep : doc["reports"]) {
        CHECK(rep["verdict"] != "Fail");
        if (rep["verdict"] == "Pass") ++passes;
    }
    CHECK(passes > 0);
}

TEST_CASE("catalog command validates models") {
    JobConfig cfg = base_cfg("catalog");
    cfg.name = "P1";
    JobResult r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[Pass]") != std::string::npos);
    CHECK(r.output.find("P1/F2") != std::string::npos);

    cfg.name = "Gm";
    cfg.format = "structured";
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["reports"][0]["verdict"] == "Pass");
    CHECK(doc["reports"][0]["lhs"]["num"] == nlohmann::json::array({"1", "-1"}));
}

TEST_CASE("bad input earns exit code 2 and a message") {
    JobConfig cfg = base_cfg("count");
    JobResult r = cli::run_job(cfg);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error:") == 0);

    cfg.scheme_path = scheme_dir() + "/no_such_file.scheme";
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 2);

    const std::string dir = fresh_dir("badscheme");
    const std::string bad = dir + "/bad.scheme";
    std::ofstream(bad) << "base_char 2\nbase_deg 1\nambient affine 1\nequation x7\n";
    cfg.scheme_path = bad;
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("line 4") != std::string::npos);
    std::filesystem::remove_all(dir);

    cfg = base_cfg("verify");
    cfg.identity = "1.3.6";
    cfg.phi_inline = "[[2]]";
    r = cli::run_job(cfg); // no --p
    CHECK(r.exit_code == 2);

    cfg.p = 5;
    cfg.phi_inline = "[[2]"; // broken JSON
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error:") == 0);

    cfg.phi_inline = "[[5]]"; // not invertible mod 5
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 2);

    cfg.phi_inline = "[[2]]";
    cfg.identity = "2.1.3";
    cfg.n = 6;
    cfg.n2 = 4; // not a divisor
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 2);

    cfg = base_cfg("catalog");
    cfg.name = "P9";
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 2);

    // a budget too small to enumerate is a refusal, not a wrong answer
    cfg = base_cfg("count");
    cfg.scheme_path = scheme("elliptic_f2");
    cfg.N = 4;
    cfg.budget = 10;
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error:") == 0);
}

TEST_CASE("zeta command falls back to probing when the budget stops doubling") {
    // budget 100 affords the torus over F_2 only through n = 6 (2^7 = 128 is
    // refused), so the doubling loop never confirms; the probe path must pin
    // the function from the affordable prefix instead
    JobConfig cfg = base_cfg("zeta");
    cfg.scheme_path = scheme("gm_f2");
    cfg.budget = 100;
    cfg.format = "structured";
    JobResult r = cli::run_job(cfg);
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["result"]["num"] == nlohmann::json::array({"1", "-1"}));
    CHECK(doc["result"]["den"] == nlohmann::json::array({"1", "-2"}));
    CHECK(doc["result"]["counts_used"] == 6);
    CHECK(doc["result"]["confirmation_terms"].get<int>() >= 2);

    // starve it completely and the command refuses instead of guessing
    cfg.budget = 8;
    r = cli::run_job(cfg);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error:") == 0);
}
