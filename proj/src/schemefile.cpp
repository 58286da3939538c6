#include "zel/schemefile.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace zel::schemefile {

ParseError::ParseError(const std::string& msg, int line_, int column_)
    : std::runtime_error("line " + std::to_string(line_) + ", column " +
                         std::to_string(column_) + ": " + msg),
      line(line_),
      column(column_) {}

namespace {

// one line's worth of tokens; column is the 1-based position of the first char
struct Token {
    enum Kind { Word, Integer, Plus, Minus, Star, Caret, End } kind = End;
    std::string text;
    int column = 0;
};

class LineLexer {
  public:
    LineLexer(std::string_view s, int line) : s_(s), line_(line) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, cur_.kind == Token::End ? end_col_ : cur_.column);
    }

    [[noreturn]] void error_at(int column, const std::string& msg) const {
        throw ParseError(msg, line_, column);
    }

  private:
    void advance() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
        end_col_ = static_cast<int>(pos_) + 1;
        if (pos_ >= s_.size() || s_[pos_] == '#') {
            cur_ = {Token::End, "", end_col_};
            return;
        }
        const int col = static_cast<int>(pos_) + 1;
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t b = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            cur_ = {Token::Integer, std::string(s_.substr(b, pos_ - b)), col};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t b = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            cur_ = {Token::Word, std::string(s_.substr(b, pos_ - b)), col};
            return;
        }
        ++pos_;
        switch (c) {
            case '+': cur_ = {Token::Plus, "+", col}; return;
            case '-': cur_ = {Token::Minus, "-", col}; return;
            case '*': cur_ = {Token::Star, "*", col}; return;
            case '^': cur_ = {Token::Caret, "^", col}; return;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line_, col);
        }
    }

    std::string_view s_;
    int line_;
    std::size_t pos_ = 0;
    int end_col_ = 1;
    Token cur_;
};

struct RawTerm {
    Int coeff{1};
    std::array<std::uint8_t, variety::kMaxVars> exps{};
};
using RawPoly = std::vector<RawTerm>;

long parse_small_int(LineLexer& lx, const char* what, long lo, long hi) {
    if (lx.peek().kind != Token::Integer) lx.fail(std::string("expected ") + what);
    Token t = lx.take();
    errno = 0;
    char* end = nullptr;
    long v = std::strtol(t.text.c_str(), &end, 10);
    if (errno != 0 || *end != '\0' || v < lo || v > hi)
        lx.error_at(t.column, std::string(what) + " out of range");
    return v;
}

// factor := INT | VAR [ '^' INT ]
void parse_factor(LineLexer& lx, RawTerm& term) {
    const Token t = lx.take();
    if (t.kind == Token::Integer) {
        term.coeff *= Int(t.text);
        return;
    }
    if (t.kind != Token::Word || t.text.size() < 2 || t.text[0] != 'x' ||
        !std::all_of(t.text.begin() + 1, t.text.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        lx.error_at(t.column, "expected a coefficient or a variable x0..x" +
                                  std::to_string(variety::kMaxVars - 1));
    const long idx = std::strtol(t.text.c_str() + 1, nullptr, 10);
    if (idx >= variety::kMaxVars)
        lx.error_at(t.column, "variable index out of range (max x" +
                                  std::to_string(variety::kMaxVars - 1) + ")");
    long e = 1;
    if (lx.peek().kind == Token::Caret) {
        lx.take();
        if (lx.peek().kind != Token::Integer) lx.fail("expected an exponent after '^'");
        Token et = lx.take();
        e = std::strtol(et.text.c_str(), nullptr, 10);
        if (et.text.size() > 3 || e > 255) lx.error_at(et.column, "exponent out of range (max 255)");
    }
    const long total = static_cast<long>(term.exps[static_cast<std::size_t>(idx)]) + e;
    if (total > 255) lx.error_at(t.column, "accumulated exponent out of range (max 255)");
    term.exps[static_cast<std::size_t>(idx)] = static_cast<std::uint8_t>(total);
}

// poly := [sign] term { sign term },  term := factor { '*' factor }
RawPoly parse_poly(LineLexer& lx) {
    RawPoly poly;
    if (lx.peek().kind == Token::End) lx.fail("expected a polynomial");
    bool negative = false;
    if (lx.peek().kind == Token::Plus || lx.peek().kind == Token::Minus)
        negative = lx.take().kind == Token::Minus;
    for (;;) {
        RawTerm term;
        parse_factor(lx, term);
        while (lx.peek().kind == Token::Star) {
            lx.take();
            parse_factor(lx, term);
        }
        if (negative) term.coeff = -term.coeff;
        poly.push_back(term);
        if (lx.peek().kind == Token::End) return poly;
        const Token sep = lx.take();
        if (sep.kind == Token::Plus)
            negative = false;
        else if (sep.kind == Token::Minus)
            negative = true;
        else
            lx.error_at(sep.column, "expected '+', '-', or end of line");
    }
}

variety::MultiPoly to_poly(const gf::Field& F, const RawPoly& raw) {
    std::vector<variety::Term> terms;
    terms.reserve(raw.size());
    for (const RawTerm& t : raw) {
        variety::Term out;
        out.coeff = F.from_int(t.coeff);
        out.exps = t.exps;
        terms.push_back(out);
    }
    return variety::make_poly(F, std::move(terms));
}

} // namespace

variety::SchemeSpec parse_scheme(const std::string& text) {
    std::optional<long> base_char, base_deg, dim;
    std::optional<variety::Ambient> ambient;
    std::vector<RawPoly> equations, inequations;

    std::istringstream in(text);
    std::string linebuf;
    int lineno = 0;
    while (std::getline(in, linebuf)) {
        ++lineno;
        if (!linebuf.empty() && linebuf.back() == '\r') linebuf.pop_back();
        LineLexer lx(linebuf, lineno);
        if (lx.peek().kind == Token::End) continue;
        if (lx.peek().kind != Token::Word) lx.fail("expected a field name");
        const Token key = lx.take();
        if (key.text == "base_char") {
            if (base_char) lx.error_at(key.column, "duplicate base_char");
            base_char = parse_small_int(lx, "base characteristic", 2, 1 << 24);
        } else if (key.text == "base_deg") {
            if (base_deg) lx.error_at(key.column, "duplicate base_deg");
            base_deg = parse_small_int(lx, "base degree", 1, gf::kMaxDeg);
        } else if (key.text == "ambient") {
            if (ambient) lx.error_at(key.column, "duplicate ambient");
            if (lx.peek().kind != Token::Word) lx.fail("expected 'affine' or 'projective'");
            const Token kind = lx.take();
            if (kind.text == "affine")
                ambient = variety::Ambient::Affine;
            else if (kind.text == "projective")
                ambient = variety::Ambient::Projective;
            else
                lx.error_at(kind.column, "unknown ambient '" + kind.text + "'");
            dim = parse_small_int(lx, "ambient dimension", 0, variety::kMaxAmbientDim);
        } else if (key.text == "equation") {
            equations.push_back(parse_poly(lx));
        } else if (key.text == "inequation") {
            inequations.push_back(parse_poly(lx));
        } else {
            lx.error_at(key.column, "unknown field '" + key.text + "'");
        }
        if (lx.peek().kind != Token::End) lx.fail("trailing input after the statement");
    }
    if (!base_char) throw ParseError("missing base_char", lineno + 1, 1);
    if (!base_deg) throw ParseError("missing base_deg", lineno + 1, 1);
    if (!ambient) throw ParseError("missing ambient", lineno + 1, 1);

    const gf::Field& F = gf::make_field(*base_char, static_cast<int>(*base_deg));
    std::vector<variety::MultiPoly> eqs, ineqs;
    for (const RawPoly& r : equations) eqs.push_back(to_poly(F, r));
    for (const RawPoly& r : inequations) ineqs.push_back(to_poly(F, r));
    return variety::make_scheme(F, *ambient, static_cast<int>(*dim), std::move(eqs),
                                std::move(ineqs));
}

variety::SchemeSpec load_scheme_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read scheme file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scheme(buf.str());
}

namespace {

std::string render_poly(const variety::SchemeSpec& s, const variety::MultiPoly& p) {
    // terms are already in canonical order (make_poly sorts and merges)
    std::string out;
    for (const variety::Term& t : p.terms) {
        if (!out.empty()) out += ' ';
        out += std::to_string(s.base->index(t.coeff));
        out += ':';
        for (int v = 0; v < variety::kMaxVars; ++v) {
            if (v) out += ',';
            out += std::to_string(t.exps[static_cast<std::size_t>(v)]);
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace

std::string canonical_serialization(const variety::SchemeSpec& s) {
    std::ostringstream out;
    out << "zel-scheme 1\n";
    out << "p " << s.base->ch << "\n";
    out << "e " << s.base->deg << "\n";
    out << "ambient " << (s.ambient == variety::Ambient::Affine ? "affine" : "projective") << " "
        << s.dim << "\n";
    std::vector<std::string> eqs, ineqs;
    for (const auto& p : s.equations) eqs.push_back(render_poly(s, p));
    for (const auto& p : s.inequations) ineqs.push_back(render_poly(s, p));
    std::sort(eqs.begin(), eqs.end());
    std::sort(ineqs.begin(), ineqs.end());
    for (const auto& e : eqs) out << "eq " << e << "\n";
    for (const auto& e : ineqs) out << "ineq " << e << "\n";
    return out.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t digest(const variety::SchemeSpec& s) {
    return fnv1a64(canonical_serialization(s));
}

} // namespace zel::schemefile
