#include "ellcyc/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace ellcyc {

namespace {

constexpr std::string_view kFnNames[] = {"sn", "cn", "dn", "nd", "cd", "sd",
                                         "ns", "cs", "ds", "nc", "dc", "sc"};

std::vector<std::string> fn_name_list() {
    std::vector<std::string> out;
    for (auto n : kFnNames) out.emplace_back(n);
    return out;
}

bool is_one(const expr::NodePtr& e) { return e && e->op == expr::Op::Number && e->number == 1.0; }

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string_view to_string(FnKind fn) { return kFnNames[static_cast<int>(fn)]; }

std::optional<FnKind> parse_fn(std::string_view name) {
    for (int i = 0; i < 12; ++i) {
        if (kFnNames[i] == name) return static_cast<FnKind>(i);
    }
    return std::nullopt;
}

Exponents exponents_of(FnKind fn) {
    switch (fn) {
        case FnKind::sn: return {1, 0, 0};
        case FnKind::cn: return {0, 1, 0};
        case FnKind::dn: return {0, 0, 1};
        case FnKind::nd: return {0, 0, -1};
        case FnKind::cd: return {0, 1, -1};
        case FnKind::sd: return {1, 0, -1};
        case FnKind::ns: return {-1, 0, 0};
        case FnKind::cs: return {-1, 1, 0};
        case FnKind::ds: return {-1, 0, 1};
        case FnKind::nc: return {0, -1, 0};
        case FnKind::dc: return {0, -1, 1};
        case FnKind::sc: return {1, -1, 0};
    }
    return {};
}

int Shift::resolve(int r, int s, int t) const {
    switch (symbol) {
        case 'r': return multiple * r;
        case 's': return multiple * s;
        case 't': return multiple * t;
        default: return multiple;
    }
}

std::string Basis::tag() const {
    if (kind == Kind::constant) return "1";
    if (kind == Kind::zeta) return "Z";
    std::string out;
    auto part = [&](char letter, int e) {
        if (e == 0) return;
        out += letter;
        if (e != 1) out += std::to_string(e);
    };
    part('s', s);
    part('c', c);
    part('d', d);
    return out;
}

std::optional<Basis> Basis::from_tag(std::string_view tag) {
    Basis b;
    if (tag == "1") return b;
    if (tag == "Z") {
        b.kind = Kind::zeta;
        return b;
    }
    b.kind = Kind::monomial;
    std::size_t i = 0;
    bool any = false;
    while (i < tag.size()) {
        const char letter = tag[i++];
        int e = 1;
        if (i < tag.size() && std::isdigit(static_cast<unsigned char>(tag[i]))) {
            e = 0;
            while (i < tag.size() && std::isdigit(static_cast<unsigned char>(tag[i]))) {
                e = e * 10 + (tag[i++] - '0');
            }
        }
        if (e <= 0) return std::nullopt;
        switch (letter) {
            case 's': b.s += e; break;
            case 'c': b.c += e; break;
            case 'd': b.d += e; break;
            default: return std::nullopt;
        }
        any = true;
    }
    if (!any) return std::nullopt;
    return b;
}

std::string_view to_string(Family f) {
    switch (f) {
        case Family::MI_I: return "MI-I";
        case Family::MI_II: return "MI-II";
        case Family::MI_III: return "MI-III";
        case Family::MI_IV: return "MI-IV";
        case Family::MI_I_alt: return "MI-I-alt";
        case Family::MI_II_alt: return "MI-II-alt";
        case Family::direct: return "direct";
    }
    return "direct";
}

std::optional<Family> parse_family(std::string_view name) {
    for (Family f : {Family::MI_I, Family::MI_II, Family::MI_III, Family::MI_IV, Family::MI_I_alt,
                     Family::MI_II_alt, Family::direct}) {
        if (to_string(f) == name) return f;
    }
    return std::nullopt;
}

std::string_view to_string(PeriodKind t) { return t == PeriodKind::TwoK ? "2K" : "4K"; }

Family family_for(int P, int Q, bool alternating) {
    if (alternating) {
        if (Q != 0) return Family::direct;
        return P == 1 ? Family::MI_I_alt : Family::MI_II_alt;
    }
    if (Q == 0) return P == 1 ? Family::MI_I : Family::MI_II;
    return P == 0 ? Family::MI_III : Family::MI_IV;
}

bool IdentitySpec::has_flag(std::string_view flag) const {
    return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

bool IdentitySpec::alternating() const {
    return std::any_of(lhs.begin(), lhs.end(),
                       [](const LhsTerm& t) { return t.term.pattern == SignPattern::alternating; });
}

bool IdentitySpec::uses_symbol(char symbol) const {
    for (const auto& t : lhs) {
        for (const auto& f : t.term.factors) {
            if (f.shift.symbol == symbol) return true;
        }
    }
    const std::string names[] = {std::string(1, symbol), symbol == 'r' ? "a" : symbol == 's' ? "a'" : "a''",
                                 symbol == 'r' ? "b" : symbol == 's' ? "b'" : "b''"};
    auto check = [&](const expr::NodePtr& e) {
        if (!e) return false;
        std::vector<std::string> vars, fns;
        expr::collect_names(*e, vars, fns);
        for (const auto& n : names) {
            if (std::find(vars.begin(), vars.end(), n) != vars.end()) return true;
        }
        return false;
    };
    for (const auto& d : definitions) {
        if (check(d.value)) return true;
    }
    for (const auto& t : rhs) {
        if (check(t.coeff)) return true;
    }
    for (const auto& t : lhs) {
        if (check(t.coeff)) return true;
    }
    return false;
}

bool IdentitySpec::uses_integral() const {
    auto check = [](const expr::NodePtr& e) {
        if (!e) return false;
        std::vector<std::string> vars, fns;
        expr::collect_names(*e, vars, fns);
        return std::find(fns.begin(), fns.end(), "INT") != fns.end();
    };
    for (const auto& d : definitions) {
        if (check(d.value)) return true;
    }
    for (const auto& t : rhs) {
        if (check(t.coeff)) return true;
    }
    return false;
}

std::pair<int, int> IdentitySpec::parity(int p) const {
    std::optional<std::pair<int, int>> result;
    for (const auto& t : lhs) {
        int a = 0, b = 0, c = 0;
        for (const auto& f : t.term.factors) {
            const Exponents e = exponents_of(f.fn);
            b += e.s * f.power;
            c += e.c * f.power;
            a += e.d * f.power;
        }
        if (t.term.kind == TermKind::product) {
            a *= p;
            b *= p;
            c *= p;
        }
        const std::pair<int, int> pq{((a + c) % 2 + 2) % 2, ((b + c) % 2 + 2) % 2};
        if (result && *result != pq) {
            throw SemanticError("identity " + id + ": LHS terms mix parity classes");
        }
        result = pq;
    }
    return result.value_or(std::pair<int, int>{0, 0});
}

bool operator==(const IdentitySpec& a, const IdentitySpec& b) {
    if (a.id != b.id || a.family != b.family || a.period != b.period || a.flags != b.flags) return false;
    if (!expr::equal(a.constraints, b.constraints)) return false;
    if (a.definitions.size() != b.definitions.size() || a.lhs.size() != b.lhs.size() ||
        a.rhs.size() != b.rhs.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.definitions.size(); ++i) {
        if (a.definitions[i].name != b.definitions[i].name ||
            !expr::equal(a.definitions[i].value, b.definitions[i].value)) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a.lhs.size(); ++i) {
        if (!(a.lhs[i].term == b.lhs[i].term) || !expr::equal(a.lhs[i].coeff, b.lhs[i].coeff)) return false;
    }
    for (std::size_t i = 0; i < a.rhs.size(); ++i) {
        if (!(a.rhs[i].basis == b.rhs[i].basis) || !expr::equal(a.rhs[i].coeff, b.rhs[i].coeff)) return false;
    }
    return true;
}

const IdentitySpec* CatalogFile::find(std::string_view id) const {
    for (const auto& s : identities) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

const std::vector<std::string> kTermStops = {"sum", "prod", "basis"};

Shift parse_shift(expr::TokenStream& ts) {
    Shift sh;
    int sign = 1;
    bool any = false;
    if (ts.accept(expr::Tok::Plus)) {
        sign = 1;
    } else if (ts.accept(expr::Tok::Minus)) {
        sign = -1;
    }
    int mult = 1;
    if (ts.peek().kind == expr::Tok::Number) {
        const expr::Token n = ts.next();
        if (n.value != static_cast<int>(n.value) || n.value < 0) {
            throw ParseError("shift multiplier must be a non-negative integer", ts.line(), n.column,
                             {"integer"});
        }
        mult = static_cast<int>(n.value);
        any = true;
    }
    if (ts.peek().kind == expr::Tok::Ident) {
        const expr::Token id = ts.peek();
        if (id.text != "r" && id.text != "s" && id.text != "t") {
            throw ParseError("invalid shift symbol '" + id.text + "'", ts.line(), id.column,
                             {"r", "s", "t", "integer"});
        }
        ts.next();
        sh.symbol = id.text[0];
        any = true;
    }
    if (!any) ts.fail("empty shift", {"r", "s", "t", "integer"});
    sh.multiple = sign * mult;
    if (sh.multiple == 0) sh.symbol = 0;
    return sh;
}

TermFactor parse_factor(expr::TokenStream& ts) {
    const expr::Token name = ts.peek();
    if (name.kind != expr::Tok::Ident) ts.fail("expected a Jacobi function", fn_name_list());
    if (name.text == "Z" || name.text == "Zu") {
        throw SemanticError("line " + std::to_string(ts.line()) +
                            ": Z may only appear in right-hand side basis sums");
    }
    auto fn = parse_fn(name.text);
    if (!fn) {
        throw ParseError("unknown function '" + name.text + "'", ts.line(), name.column, fn_name_list());
    }
    ts.next();
    TermFactor f;
    f.fn = *fn;
    ts.expect(expr::Tok::LBracket, {"'['"});
    f.shift = parse_shift(ts);
    ts.expect(expr::Tok::RBracket, {"']'"});
    if (ts.accept(expr::Tok::Caret)) {
        const expr::Token e = ts.expect(expr::Tok::Number, {"integer"});
        if (e.value < 1 || e.value != static_cast<int>(e.value)) {
            throw ParseError("power must be a positive integer", ts.line(), e.column, {"integer"});
        }
        f.power = static_cast<int>(e.value);
    }
    return f;
}

std::vector<TermFactor> parse_factors(expr::TokenStream& ts) {
    std::vector<TermFactor> out;
    out.push_back(parse_factor(ts));
    while (ts.peek().kind == expr::Tok::Star && ts.peek(1).kind == expr::Tok::Ident &&
           parse_fn(ts.peek(1).text)) {
        ts.next();
        out.push_back(parse_factor(ts));
    }
    return out;
}

bool at_keyword(const expr::TokenStream& ts, std::string_view word) {
    return ts.peek().kind == expr::Tok::Ident && ts.peek().text == word;
}

expr::NodePtr parse_coefficient(expr::TokenStream& ts) {
    expr::NodePtr c = expr::parse_expression(ts, kTermStops);
    ts.expect(expr::Tok::Star, {"'*'"});
    return c;
}

LhsTerm parse_lhs_term(expr::TokenStream& ts, bool allow_bare_pattern) {
    LhsTerm t;
    if (at_keyword(ts, "sum") || at_keyword(ts, "prod")) {
        t.coeff = expr::number(1.0);
    } else {
        t.coeff = parse_coefficient(ts);
    }
    if (at_keyword(ts, "sum")) {
        t.term.kind = TermKind::sum;
    } else if (at_keyword(ts, "prod")) {
        t.term.kind = TermKind::product;
    } else {
        ts.fail("expected 'sum' or 'prod'", {"sum", "prod"});
    }
    ts.next();
    if (ts.accept(expr::Tok::LBracket)) {
        const expr::Token pat = ts.expect(expr::Tok::Ident, {"uniform", "alt"});
        if (pat.text == "uniform") {
            t.term.pattern = SignPattern::uniform;
        } else if (pat.text == "alt") {
            t.term.pattern = SignPattern::alternating;
        } else {
            throw ParseError("unknown sign pattern '" + pat.text + "'", ts.line(), pat.column,
                             {"uniform", "alt"});
        }
        ts.expect(expr::Tok::RBracket, {"']'"});
    } else if (!allow_bare_pattern) {
        ts.fail("expected sign pattern", {"'['"});
    }
    t.term.factors = parse_factors(ts);
    return t;
}

std::vector<LhsTerm> parse_lhs_terms(expr::TokenStream& ts, bool compact) {
    std::vector<LhsTerm> out;
    out.push_back(parse_lhs_term(ts, compact));
    for (;;) {
        if (ts.accept(expr::Tok::Plus)) {
            out.push_back(parse_lhs_term(ts, compact));
        } else if (ts.peek().kind == expr::Tok::Minus) {
            ts.next();
            LhsTerm t = parse_lhs_term(ts, compact);
            t.coeff = expr::unary(expr::Op::Negate, t.coeff);
            out.push_back(std::move(t));
        } else {
            return out;
        }
    }
}

Basis parse_basis(expr::TokenStream& ts) {
    const expr::Token kw = ts.expect(expr::Tok::Ident, {"basis"});
    if (kw.text != "basis") throw ParseError("expected 'basis'", ts.line(), kw.column, {"basis"});
    ts.expect(expr::Tok::Less, {"'<'"});
    const expr::Token tag = ts.next();
    if (tag.kind != expr::Tok::Ident && tag.kind != expr::Tok::Number) {
        throw ParseError("expected basis tag", ts.line(), tag.column, {"1", "Z", "monomial tag"});
    }
    auto b = Basis::from_tag(tag.text);
    if (!b) {
        throw SemanticError("line " + std::to_string(ts.line()) + ": unknown basis tag '" + tag.text + "'");
    }
    ts.expect(expr::Tok::Greater, {"'>'"});
    return *b;
}

RhsTerm parse_rhs_term(expr::TokenStream& ts, bool negate) {
    RhsTerm t;
    if (at_keyword(ts, "const") && ts.peek(1).kind == expr::Tok::Colon) {
        ts.next();
        ts.next();
        t.coeff = expr::parse_expression(ts, kTermStops);
        t.basis = Basis{};
    } else {
        t.coeff = parse_coefficient(ts);
        t.basis = parse_basis(ts);
    }
    if (negate) t.coeff = expr::unary(expr::Op::Negate, t.coeff);
    return t;
}

std::vector<RhsTerm> parse_rhs_terms(expr::TokenStream& ts) {
    std::vector<RhsTerm> out;
    out.push_back(parse_rhs_term(ts, false));
    for (;;) {
        if (ts.accept(expr::Tok::Plus)) {
            out.push_back(parse_rhs_term(ts, false));
        } else if (ts.accept(expr::Tok::Minus)) {
            out.push_back(parse_rhs_term(ts, true));
        } else {
            return out;
        }
    }
}

void expect_end(expr::TokenStream& ts) {
    if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'", {"'+'", "end of line"});
}

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

void infer_family(IdentitySpec& spec) {
    const bool alt = spec.alternating();
    const auto rep = representative_p(spec);
    const auto [P, Q] = spec.parity(rep.value_or(alt ? 4 : 3));
    spec.family = family_for(P, Q, alt);
    spec.period = Q == 0 ? PeriodKind::TwoK : PeriodKind::FourK;
}

}  // namespace

std::vector<TermFactor> parse_factor_product(std::string_view text) {
    expr::TokenStream ts(expr::tokenize(text, 1), 1);
    auto out = parse_factors(ts);
    expect_end(ts);
    return out;
}

CatalogFile parse_catalog(std::string_view text) {
    CatalogFile file;
    IdentitySpec* current = nullptr;
    std::vector<bool> explicit_family;
    int line_no = 0;
    std::size_t pos = 0;
    bool seen_header = false;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        const std::string_view raw = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        // Identity lines are tokenized after the id is cut out (see below).
        std::size_t lead = 0;
        while (lead < raw.size() && std::isspace(static_cast<unsigned char>(raw[lead]))) ++lead;
        const bool identity_line = raw.substr(lead).starts_with("identity") &&
                                   (raw.size() == lead + 8 || std::isspace(static_cast<unsigned char>(raw[lead + 8])));
        auto tokens = expr::tokenize(identity_line ? raw.substr(0, lead + 8) : raw, line_no);
        if (tokens.size() == 1) {
            if (eol == text.size()) break;
            continue;
        }
        expr::TokenStream ts(std::move(tokens), line_no);
        const expr::Token first = ts.peek();

        if (first.kind == expr::Tok::Ident && first.text == "catalog" && ts.peek(1).kind == expr::Tok::Ident) {
            if (seen_header || !file.identities.empty()) {
                throw ParseError("catalog header must come first", line_no, first.column, {"identity"});
            }
            seen_header = true;
            ts.next();
            while (!ts.at_end()) {
                const expr::Token key = ts.expect(expr::Tok::Ident, {"version", "tolerance"});
                ts.expect(expr::Tok::Assign, {"'='"});
                const expr::Token val = ts.expect(expr::Tok::Number, {"number"});
                if (key.text == "version") {
                    file.version = static_cast<int>(val.value);
                } else if (key.text == "tolerance" || key.text == "tol") {
                    if (!(val.value > 0.0)) throw ParseError("tolerance must be positive", line_no, val.column, {});
                    file.tolerance = val.value;
                } else {
                    throw ParseError("unknown header key '" + key.text + "'", line_no, key.column,
                                     {"version", "tolerance"});
                }
            }
            if (eol == text.size()) break;
            continue;
        }

        if (first.kind == expr::Tok::Ident && first.text == "identity") {
            // Ids may contain dots and dashes, so the id word is cut out of
            // the raw line before the attributes are tokenized.
            IdentitySpec spec;
            std::size_t i = static_cast<std::size_t>(first.column - 1) + first.text.size();
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            const std::size_t id_start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])) && raw[i] != '#') ++i;
            spec.id = std::string(raw.substr(id_start, i - id_start));
            if (spec.id.empty()) {
                throw ParseError("expected identity id", line_no, static_cast<int>(id_start) + 1, {"identifier"});
            }
            ts = expr::TokenStream(expr::tokenize(raw.substr(i), line_no, static_cast<int>(i) + 1), line_no);
            bool have_family = false;
            bool have_period = false;
            while (!ts.at_end()) {
                const expr::Token key = ts.expect(expr::Tok::Ident, {"family", "T", "constraints"});
                ts.expect(expr::Tok::Assign, {"'='"});
                if (key.text == "family") {
                    std::string value;
                    const expr::Token v = ts.expect(expr::Tok::Ident, {"family tag"});
                    value = v.text;
                    int end = v.column + static_cast<int>(v.text.size());
                    while (!ts.at_end() && ts.peek().column == end) {
                        const expr::Token more = ts.next();
                        value += more.text;
                        end = more.column + static_cast<int>(more.text.size());
                    }
                    auto fam = parse_family(value);
                    if (!fam) {
                        throw ParseError("unknown family '" + value + "'", line_no, v.column,
                                         {"MI-I", "MI-II", "MI-III", "MI-IV", "MI-I-alt", "MI-II-alt", "direct"});
                    }
                    spec.family = *fam;
                    have_family = true;
                } else if (key.text == "T") {
                    const expr::Token n = ts.expect(expr::Tok::Number, {"2K", "4K"});
                    const expr::Token k = ts.expect(expr::Tok::Ident, {"K"});
                    if (k.text != "K" || (n.value != 2.0 && n.value != 4.0)) {
                        throw ParseError("period must be 2K or 4K", line_no, n.column, {"2K", "4K"});
                    }
                    spec.period = n.value == 2.0 ? PeriodKind::TwoK : PeriodKind::FourK;
                    have_period = true;
                } else if (key.text == "constraints") {
                    const expr::Token str = ts.expect(expr::Tok::String, {"quoted predicate"});
                    if (!trim(str.text).empty()) {
                        expr::TokenStream inner(expr::tokenize(str.text, line_no, str.column + 1), line_no);
                        spec.constraints = expr::parse_expression(inner);
                        if (!inner.at_end()) inner.fail("trailing input in constraints", {"operator", "'\"'"});
                    }
                } else {
                    throw ParseError("unknown attribute '" + key.text + "'", line_no, key.column,
                                     {"family", "T", "constraints"});
                }
            }
            if (!have_period && have_family) {
                spec.period = (spec.family == Family::MI_III || spec.family == Family::MI_IV)
                                  ? PeriodKind::FourK
                                  : PeriodKind::TwoK;
            }
            file.identities.push_back(std::move(spec));
            explicit_family.push_back(have_family);
            current = &file.identities.back();
            if (eol == text.size()) break;
            continue;
        }

        if (first.kind == expr::Tok::Ident && ts.peek(1).kind == expr::Tok::Colon &&
            (first.text == "lhs" || first.text == "rhs" || first.text == "let" || first.text == "flags")) {
            if (!current) {
                throw ParseError("'" + first.text + ":' outside an identity block", line_no, first.column,
                                 {"identity"});
            }
            ts.next();
            ts.next();
            if (first.text == "lhs") {
                auto terms = parse_lhs_terms(ts, false);
                expect_end(ts);
                for (auto& t : terms) current->lhs.push_back(std::move(t));
            } else if (first.text == "rhs") {
                auto terms = parse_rhs_terms(ts);
                expect_end(ts);
                for (auto& t : terms) current->rhs.push_back(std::move(t));
            } else if (first.text == "let") {
                const expr::Token name = ts.expect(expr::Tok::Ident, {"name"});
                if (expr::is_known_function(name.text) || parse_fn(name.text)) {
                    throw ParseError("definition shadows a function name", line_no, name.column, {});
                }
                ts.expect(expr::Tok::Assign, {"'='"});
                Definition d{name.text, expr::parse_expression(ts)};
                expect_end(ts);
                current->definitions.push_back(std::move(d));
            } else {
                while (!ts.at_end()) {
                    std::string flag = ts.expect(expr::Tok::Ident, {"flag"}).text;
                    while (ts.peek().kind == expr::Tok::Minus && ts.peek(1).kind == expr::Tok::Ident) {
                        ts.next();
                        flag += "-" + ts.next().text;
                    }
                    current->flags.push_back(flag);
                }
            }
            if (eol == text.size()) break;
            continue;
        }

        // Compact one-line form: <lhs terms> == <rhs terms>.
        {
            IdentitySpec spec;
            spec.id = "line" + std::to_string(line_no);
            spec.lhs = parse_lhs_terms(ts, true);
            ts.expect(expr::Tok::EqEq, {"'=='", "'+'", "'*'"});
            spec.rhs = parse_rhs_terms(ts);
            expect_end(ts);
            file.identities.push_back(std::move(spec));
            explicit_family.push_back(false);
            current = nullptr;
        }
        if (eol == text.size()) break;
    }

    for (std::size_t i = 0; i < file.identities.size(); ++i) {
        IdentitySpec& spec = file.identities[i];
        if (spec.lhs.empty()) throw SemanticError("identity " + spec.id + " has no lhs");
        if (spec.rhs.empty()) throw SemanticError("identity " + spec.id + " has no rhs");
        if (!explicit_family[i]) infer_family(spec);
        validate(spec);
    }
    std::vector<std::string> ids;
    for (const auto& s : file.identities) ids.push_back(s.id);
    std::sort(ids.begin(), ids.end());
    if (auto dup = std::adjacent_find(ids.begin(), ids.end()); dup != ids.end()) {
        throw SemanticError("duplicate identity id '" + *dup + "'");
    }
    return file;
}

std::optional<int> representative_p(const IdentitySpec& spec) {
    std::vector<int> range;
    switch (spec.family) {
        case Family::MI_III:
        case Family::MI_IV: range = {3, 5, 7}; break;
        case Family::MI_I_alt:
        case Family::MI_II_alt: range = {4, 6, 8}; break;
        default: range = {2, 3, 4, 5, 6, 7, 8}; break;
    }
    const bool use_s = spec.uses_symbol('s');
    const bool use_t = spec.uses_symbol('t');
    auto admits = [&](int p, int s, int t) {
        try {
            return expr::evaluate_predicate(spec.constraints, p, 1, s, t);
        } catch (const Error&) {
            return false;
        }
    };
    for (int p : range) {
        for (int s = use_s ? 2 : 0; s <= (use_s ? p - 1 : 0); ++s) {
            for (int t = use_t ? std::max(3, s + 1) : 0; t <= (use_t ? p - 1 : 0); ++t) {
                if (admits(p, s, t)) return p;
            }
        }
    }
    return std::nullopt;
}

void validate(const IdentitySpec& spec) {
    const auto rep = representative_p(spec);
    if (!rep) return;
    const auto [P, Q] = spec.parity(*rep);
    const bool alt = spec.alternating();
    if (spec.family != Family::direct) {
        const Family implied = family_for(P, Q, alt);
        if (implied != spec.family) {
            throw SemanticError("identity " + spec.id + ": declared family " +
                                std::string(to_string(spec.family)) + " but LHS parity implies " +
                                std::string(to_string(implied)));
        }
        const PeriodKind implied_T = Q == 0 ? PeriodKind::TwoK : PeriodKind::FourK;
        if (implied_T != spec.period) {
            throw SemanticError("identity " + spec.id + ": period does not match LHS parity");
        }
    }
    for (const auto& t : spec.rhs) {
        switch (t.basis.kind) {
            case Basis::Kind::constant:
                if (Q != 0 || P != 0) {
                    throw SemanticError("identity " + spec.id + ": constant term outside the (+,+) class");
                }
                break;
            case Basis::Kind::zeta:
                if (!alt || Q != 0 || P != 0) {
                    throw SemanticError("identity " + spec.id + ": basis<Z> requires an alternating (+,+) sum");
                }
                break;
            case Basis::Kind::monomial: {
                const int bp = ((t.basis.d + t.basis.c) % 2 + 2) % 2;
                const int bq = ((t.basis.s + t.basis.c) % 2 + 2) % 2;
                if (bp != P || bq != Q) {
                    throw SemanticError("identity " + spec.id + ": basis<" + t.basis.tag() +
                                        "> violates the LHS parity class");
                }
                break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Printing.

namespace {

std::string print_shift(const Shift& s) {
    if (s.multiple == 0) return "0";
    std::string out = s.multiple < 0 ? "-" : "+";
    const int m = std::abs(s.multiple);
    if (s.symbol == 0) return out + std::to_string(m);
    if (m != 1) out += std::to_string(m);
    out += s.symbol;
    return out;
}

std::string print_factors(const std::vector<TermFactor>& fs) {
    std::string out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (i) out += '*';
        out += to_string(fs[i].fn);
        out += '[' + print_shift(fs[i].shift) + ']';
        if (fs[i].power != 1) out += '^' + std::to_string(fs[i].power);
    }
    return out;
}

std::string print_coefficient(const expr::NodePtr& c) {
    // Coefficients end at "* keyword", so anything looser than '*' is
    // printed as is; the parser reads the whole run as one expression.
    return expr::print(c);
}

}  // namespace

std::string print_identity(const IdentitySpec& spec) {
    std::ostringstream os;
    os << "identity " << spec.id << " family=" << to_string(spec.family) << " T=" << to_string(spec.period)
       << " constraints=\"" << (spec.constraints ? expr::print(spec.constraints) : "") << "\"\n";
    for (const auto& d : spec.definitions) {
        os << "  let: " << d.name << " = " << expr::print(d.value) << "\n";
    }
    for (const auto& t : spec.lhs) {
        os << "  lhs: ";
        if (!is_one(t.coeff)) os << print_coefficient(t.coeff) << " * ";
        os << (t.term.kind == TermKind::sum ? "sum" : "prod") << '['
           << (t.term.pattern == SignPattern::uniform ? "uniform" : "alt") << "] "
           << print_factors(t.term.factors) << "\n";
    }
    for (const auto& t : spec.rhs) {
        os << "  rhs: " << print_coefficient(t.coeff) << " * basis<" << t.basis.tag() << ">\n";
    }
    if (!spec.flags.empty()) {
        os << "  flags:";
        for (const auto& f : spec.flags) os << ' ' << f;
        os << "\n";
    }
    return os.str();
}

std::string print_catalog(const CatalogFile& file) {
    std::ostringstream os;
    os << "catalog version=" << file.version << " tolerance=" << format_double(file.tolerance) << "\n";
    for (const auto& spec : file.identities) {
        os << "\n" << print_identity(spec);
    }
    return os.str();
}

}  // namespace ellcyc
