#include "ellcyc/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace ellcyc {

ParseError::ParseError(const std::string& msg, int line, int column,
                       std::vector<std::string> expected)
    : Error([&] {
          std::ostringstream os;
          os << "line " << line << ", column " << column << ": " << msg;
          if (!expected.empty()) {
              os << " (expected one of:";
              for (const auto& e : expected) os << ' ' << e;
              os << ')';
          }
          return os.str();
      }()),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace expr {
namespace {

const std::vector<std::string> kFunctions = {"sn", "cn", "dn", "nd", "cd", "sd",  "ns",
                                             "cs", "ds", "nc", "dc", "sc", "Zu",  "sqrt",
                                             "gcd", "abs", "sum", "prod", "INT"};

int precedence(Op op) {
    switch (op) {
        case Op::Or: return 1;
        case Op::And: return 2;
        case Op::Eq:
        case Op::Ne: return 3;
        case Op::Lt:
        case Op::Le:
        case Op::Gt:
        case Op::Ge: return 4;
        case Op::Add:
        case Op::Sub: return 5;
        case Op::Mul:
        case Op::Div:
        case Op::Mod: return 6;
        case Op::Negate:
        case Op::Not: return 7;
        case Op::Pow: return 8;
        default: return 9;
    }
}

const char* symbol(Op op) {
    switch (op) {
        case Op::Add: return "+";
        case Op::Sub: return "-";
        case Op::Mul: return "*";
        case Op::Div: return "/";
        case Op::Mod: return "%";
        case Op::Pow: return "^";
        case Op::Eq: return "==";
        case Op::Ne: return "!=";
        case Op::Lt: return "<";
        case Op::Le: return "<=";
        case Op::Gt: return ">";
        case Op::Ge: return ">=";
        case Op::And: return "&&";
        case Op::Or: return "||";
        case Op::Negate: return "-";
        case Op::Not: return "!";
        default: return "?";
    }
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

bool equal(const Node& a, const Node& b) {
    if (a.op != b.op || a.name != b.name || a.args.size() != b.args.size()) return false;
    if (a.op == Op::Number && a.number != b.number) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!equal(*a.args[i], *b.args[i])) return false;
    }
    return true;
}

bool equal(const NodePtr& a, const NodePtr& b) {
    if (!a || !b) return a == b;
    return equal(*a, *b);
}

NodePtr number(double v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Number;
    n->number = v;
    return n;
}

NodePtr variable(std::string name) {
    auto n = std::make_shared<Node>();
    n->op = Op::Variable;
    n->name = std::move(name);
    return n;
}

NodePtr unary(Op op, NodePtr arg) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->args = {std::move(arg)};
    return n;
}

NodePtr binary(Op op, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->args = {std::move(lhs), std::move(rhs)};
    return n;
}

NodePtr call(std::string name, std::vector<NodePtr> args) {
    auto n = std::make_shared<Node>();
    n->op = Op::Call;
    n->name = std::move(name);
    n->args = std::move(args);
    return n;
}

// ---------------------------------------------------------------------------

std::string describe(Tok kind) {
    switch (kind) {
        case Tok::End: return "end of line";
        case Tok::Number: return "number";
        case Tok::Ident: return "identifier";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::Percent: return "'%'";
        case Tok::Caret: return "'^'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Comma: return "','";
        case Tok::Colon: return "':'";
        case Tok::Assign: return "'='";
        case Tok::EqEq: return "'=='";
        case Tok::NotEq: return "'!='";
        case Tok::Less: return "'<'";
        case Tok::LessEq: return "'<='";
        case Tok::Greater: return "'>'";
        case Tok::GreaterEq: return "'>='";
        case Tok::AndAnd: return "'&&'";
        case Tok::OrOr: return "'||'";
        case Tok::Bang: return "'!'";
        case Tok::String: return "string";
    }
    return "token";
}

std::vector<Token> tokenize(std::string_view text, int line, int first_column) {
    std::vector<Token> out;
    std::size_t i = 0;
    const int offset = first_column - 1;
    auto push = [&](Tok k, std::size_t start, std::size_t len) {
        out.push_back({k, std::string(text.substr(start, len)), 0.0, static_cast<int>(start) + 1 + offset});
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '#') break;
        const std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            double v = 0.0;
            auto res = std::from_chars(text.data() + i, text.data() + text.size(), v);
            if (res.ec != std::errc()) {
                throw ParseError("malformed number", line, static_cast<int>(start) + 1 + offset,
                                 {"number"});
            }
            i = static_cast<std::size_t>(res.ptr - text.data());
            Token t{Tok::Number, std::string(text.substr(start, i - start)), v,
                    static_cast<int>(start) + 1 + offset};
            out.push_back(t);
            continue;
        }
        if (is_ident_start(c)) {
            while (i < text.size() && is_ident_char(text[i])) ++i;
            while (i < text.size() && text[i] == '\'') ++i;
            push(Tok::Ident, start, i - start);
            continue;
        }
        if (c == '"') {
            ++i;
            while (i < text.size() && text[i] != '"') ++i;
            if (i >= text.size()) {
                throw ParseError("unterminated string", line, static_cast<int>(start) + 1 + offset,
                                 {"'\"'"});
            }
            Token t{Tok::String, std::string(text.substr(start + 1, i - start - 1)), 0.0,
                    static_cast<int>(start) + 1 + offset};
            out.push_back(t);
            ++i;
            continue;
        }
        auto two = [&](char a, char b) {
            return c == a && i + 1 < text.size() && text[i + 1] == b;
        };
        if (two('=', '=')) { push(Tok::EqEq, start, 2); i += 2; continue; }
        if (two('!', '=')) { push(Tok::NotEq, start, 2); i += 2; continue; }
        if (two('<', '=')) { push(Tok::LessEq, start, 2); i += 2; continue; }
        if (two('>', '=')) { push(Tok::GreaterEq, start, 2); i += 2; continue; }
        if (two('&', '&')) { push(Tok::AndAnd, start, 2); i += 2; continue; }
        if (two('|', '|')) { push(Tok::OrOr, start, 2); i += 2; continue; }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '%': k = Tok::Percent; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '[': k = Tok::LBracket; break;
            case ']': k = Tok::RBracket; break;
            case ',': k = Tok::Comma; break;
            case ':': k = Tok::Colon; break;
            case '=': k = Tok::Assign; break;
            case '<': k = Tok::Less; break;
            case '>': k = Tok::Greater; break;
            case '!': k = Tok::Bang; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line,
                                 static_cast<int>(start) + 1 + offset, {});
        }
        push(k, start, 1);
        ++i;
    }
    Token end{Tok::End, "", 0.0, static_cast<int>(text.size()) + 1 + offset};
    out.push_back(end);
    return out;
}

TokenStream::TokenStream(std::vector<Token> tokens, int line) : tokens_(std::move(tokens)), line_(line) {
    if (tokens_.empty() || tokens_.back().kind != Tok::End) tokens_.push_back(Token{});
}

const Token& TokenStream::peek(std::size_t ahead) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

Token TokenStream::next() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
}

bool TokenStream::accept(Tok kind) {
    if (peek().kind == kind) {
        next();
        return true;
    }
    return false;
}

Token TokenStream::expect(Tok kind, std::vector<std::string> expected) {
    if (peek().kind != kind) {
        if (expected.empty()) expected.push_back(describe(kind));
        fail("unexpected " + (peek().kind == Tok::End ? describe(Tok::End) : "'" + peek().text + "'"),
             std::move(expected));
    }
    return next();
}

void TokenStream::fail(const std::string& msg, std::vector<std::string> expected) const {
    throw ParseError(msg, line_, peek().column, std::move(expected));
}

// ---------------------------------------------------------------------------
// Recursive descent.

namespace {

class Parser {
public:
    Parser(TokenStream& ts, const std::vector<std::string>& stops) : ts_(ts), stops_(stops) {}

    NodePtr parse_or() {
        NodePtr lhs = parse_and();
        while (ts_.accept(Tok::OrOr)) lhs = binary(Op::Or, lhs, parse_and());
        return lhs;
    }

private:
    NodePtr parse_and() {
        NodePtr lhs = parse_eq();
        while (ts_.accept(Tok::AndAnd)) lhs = binary(Op::And, lhs, parse_eq());
        return lhs;
    }

    NodePtr parse_eq() {
        NodePtr lhs = parse_rel();
        for (;;) {
            if (ts_.accept(Tok::EqEq)) lhs = binary(Op::Eq, lhs, parse_rel());
            else if (ts_.accept(Tok::NotEq)) lhs = binary(Op::Ne, lhs, parse_rel());
            else return lhs;
        }
    }

    NodePtr parse_rel() {
        NodePtr lhs = parse_add();
        for (;;) {
            if (ts_.accept(Tok::Less)) lhs = binary(Op::Lt, lhs, parse_add());
            else if (ts_.accept(Tok::LessEq)) lhs = binary(Op::Le, lhs, parse_add());
            else if (ts_.accept(Tok::Greater)) lhs = binary(Op::Gt, lhs, parse_add());
            else if (ts_.accept(Tok::GreaterEq)) lhs = binary(Op::Ge, lhs, parse_add());
            else return lhs;
        }
    }

    NodePtr parse_add() {
        NodePtr lhs = parse_mul();
        for (;;) {
            if (ts_.accept(Tok::Plus)) lhs = binary(Op::Add, lhs, parse_mul());
            else if (ts_.accept(Tok::Minus)) lhs = binary(Op::Sub, lhs, parse_mul());
            else return lhs;
        }
    }

    bool at_stop() const {
        if (ts_.peek().kind != Tok::Star || ts_.peek(1).kind != Tok::Ident) return false;
        if (ts_.peek(2).kind == Tok::LParen) return false;
        const std::string& w = ts_.peek(1).text;
        return std::find(stops_.begin(), stops_.end(), w) != stops_.end();
    }

    NodePtr parse_mul() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (at_stop()) return lhs;
            if (ts_.accept(Tok::Star)) lhs = binary(Op::Mul, lhs, parse_unary());
            else if (ts_.accept(Tok::Slash)) lhs = binary(Op::Div, lhs, parse_unary());
            else if (ts_.accept(Tok::Percent)) lhs = binary(Op::Mod, lhs, parse_unary());
            else return lhs;
        }
    }

    NodePtr parse_unary() {
        if (ts_.accept(Tok::Minus)) return unary(Op::Negate, parse_unary());
        if (ts_.accept(Tok::Bang)) return unary(Op::Not, parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (ts_.accept(Tok::Caret)) return binary(Op::Pow, base, parse_unary());
        return base;
    }

    NodePtr parse_primary() {
        const Token& t = ts_.peek();
        if (t.kind == Tok::Number) {
            return number(ts_.next().value);
        }
        if (t.kind == Tok::LParen) {
            ts_.next();
            NodePtr inner = parse_or();
            ts_.expect(Tok::RParen, {"')'"});
            return inner;
        }
        if (t.kind == Tok::Ident) {
            Token id = ts_.next();
            if (ts_.peek().kind == Tok::LParen) {
                if (!is_known_function(id.text)) {
                    throw ParseError("unknown function '" + id.text + "'", ts_.line(), id.column,
                                     kFunctions);
                }
                ts_.next();
                std::vector<NodePtr> args;
                if (id.text == "INT") {
                    // INT(f,0,T) is a fixed token sequence.
                    Token f = ts_.expect(Tok::Ident, {"'f'"});
                    if (f.text != "f") throw ParseError("INT expects f", ts_.line(), f.column, {"'f'"});
                    ts_.expect(Tok::Comma, {"','"});
                    Token zero = ts_.expect(Tok::Number, {"'0'"});
                    if (zero.value != 0.0) {
                        throw ParseError("INT lower limit must be 0", ts_.line(), zero.column, {"'0'"});
                    }
                    ts_.expect(Tok::Comma, {"','"});
                    Token T = ts_.expect(Tok::Ident, {"'T'"});
                    if (T.text != "T") throw ParseError("INT upper limit must be T", ts_.line(), T.column, {"'T'"});
                    ts_.expect(Tok::RParen, {"')'"});
                    return call("INT", {});
                }
                args.push_back(parse_or());
                while (ts_.accept(Tok::Comma)) args.push_back(parse_or());
                ts_.expect(Tok::RParen, {"','", "')'"});
                check_arity(id, args.size());
                return call(id.text, std::move(args));
            }
            return variable(id.text);
        }
        ts_.fail(t.kind == Tok::End ? "unexpected end of expression" : "unexpected '" + t.text + "'",
                 {"number", "identifier", "'('", "'-'"});
    }

    void check_arity(const Token& id, std::size_t n) const {
        std::size_t want = 1;
        if (id.text == "gcd") want = 2;
        if (id.text == "sum" || id.text == "prod") want = 4;
        if (n != want) {
            throw ParseError("function '" + id.text + "' takes " + std::to_string(want) + " argument(s)",
                             ts_.line(), id.column, {});
        }
    }

    TokenStream& ts_;
    const std::vector<std::string>& stops_;
};

}  // namespace

NodePtr parse_expression(TokenStream& ts, const std::vector<std::string>& stop_before_keyword) {
    Parser p(ts, stop_before_keyword);
    return p.parse_or();
}

NodePtr parse(std::string_view text, int line) {
    TokenStream ts(tokenize(text, line), line);
    NodePtr e = parse_expression(ts);
    if (!ts.at_end()) ts.fail("trailing input '" + ts.peek().text + "'", {"operator", "end of line"});
    return e;
}

// ---------------------------------------------------------------------------
// Printer.

namespace {

void print_into(const Node& n, std::string& out);

void print_child(const Node& child, int min_prec, std::string& out) {
    if (precedence(child.op) < min_prec) {
        out += '(';
        print_into(child, out);
        out += ')';
    } else {
        print_into(child, out);
    }
}

void print_into(const Node& n, std::string& out) {
    switch (n.op) {
        case Op::Number: out += format_number(n.number); return;
        case Op::Variable: out += n.name; return;
        case Op::Call:
            out += n.name;
            out += '(';
            if (n.name == "INT") {
                out += "f,0,T";
            } else {
                for (std::size_t i = 0; i < n.args.size(); ++i) {
                    if (i) out += ", ";
                    print_into(*n.args[i], out);
                }
            }
            out += ')';
            return;
        case Op::Negate:
        case Op::Not:
            out += symbol(n.op);
            print_child(*n.args[0], precedence(n.op), out);
            return;
        case Op::Pow:
            // Base must bind tighter than '^'; exponent parses as a unary.
            print_child(*n.args[0], precedence(Op::Pow) + 1, out);
            out += '^';
            print_child(*n.args[1], precedence(Op::Negate), out);
            return;
        default: {
            const int prec = precedence(n.op);
            print_child(*n.args[0], prec, out);
            out += ' ';
            out += symbol(n.op);
            out += ' ';
            print_child(*n.args[1], prec + 1, out);
            return;
        }
    }
}

}  // namespace

std::string print(const Node& node) {
    std::string out;
    print_into(node, out);
    return out;
}

std::string print(const NodePtr& node) { return node ? print(*node) : std::string(); }

// ---------------------------------------------------------------------------
// Evaluation.

namespace {

long long as_integer(cplx v, const char* what) {
    const double r = std::round(v.real());
    if (std::abs(v.imag()) > 1e-9 || std::abs(v.real() - r) > 1e-9) {
        throw SemanticError(std::string(what) + " requires an integer value");
    }
    return static_cast<long long>(r);
}

cplx int_pow(cplx base, long long n) {
    if (n < 0) return 1.0 / int_pow(base, -n);
    cplx result = 1.0;
    while (n) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

cplx lookup(const std::string& name, Environment& env) {
    if (auto it = env.bound.find(name); it != env.bound.end()) return it->second;
    if (name == "p") return static_cast<double>(env.p);
    if (name == "r") return static_cast<double>(env.r);
    if (name == "s") return static_cast<double>(env.s);
    if (name == "t") return static_cast<double>(env.t);
    if (name == "pi") return std::numbers::pi;
    if (!env.view) throw SemanticError("identifier '" + name + "' needs a modulus");
    const ModulusView& v = *env.view;
    if (name == "m") return v.m();
    if (name == "K") return v.K();
    if (name == "Kp") return v.Kprime();
    if (name == "E") return v.E();
    if (name == "Ep") return v.Eprime();
    const double p = env.p;
    if (p == 0.0) throw SemanticError("shift argument '" + name + "' needs p");
    if (name == "a") return 2.0 * env.r * v.K() / p;
    if (name == "a'") return 2.0 * env.s * v.K() / p;
    if (name == "a''") return 2.0 * env.t * v.K() / p;
    if (name == "b") return 4.0 * env.r * v.K() / p;
    if (name == "b'") return 4.0 * env.s * v.K() / p;
    if (name == "b''") return 4.0 * env.t * v.K() / p;
    throw SemanticError("unknown identifier '" + name + "'");
}

cplx eval_jacobi(const std::string& fn, cplx x, Environment& env) {
    JacobiTriple t;
    try {
        t = env.view->triple(x);
    } catch (const PoleError&) {
        throw SingularCoefficientError(fn + " argument sits on a pole");
    }
    if (fn == "sn") return t.sn;
    if (fn == "cn") return t.cn;
    if (fn == "dn") return t.dn;
    auto code = parse_aux(fn);
    if (!code) throw SemanticError("unknown function '" + fn + "'");
    try {
        return aux_from_triple(*code, t, env.singular_eps);
    } catch (const DivisionByZeroError& e) {
        throw SingularCoefficientError(fn + " argument sits on a zero of its denominator");
    }
}

}  // namespace

bool is_known_function(std::string_view name) {
    return std::find(kFunctions.begin(), kFunctions.end(), name) != kFunctions.end();
}

cplx evaluate(const NodePtr& node, Environment& env) { return evaluate(*node, env); }

cplx evaluate(const Node& n, Environment& env) {
    auto arg = [&](std::size_t i) { return evaluate(*n.args[i], env); };
    auto truth = [](cplx v) { return v != cplx(0.0); };
    switch (n.op) {
        case Op::Number: return n.number;
        case Op::Variable: return lookup(n.name, env);
        case Op::Negate: return -arg(0);
        case Op::Not: return truth(arg(0)) ? 0.0 : 1.0;
        case Op::Add: return arg(0) + arg(1);
        case Op::Sub: return arg(0) - arg(1);
        case Op::Mul: return arg(0) * arg(1);
        case Op::Div: {
            const cplx d = arg(1);
            if (d == cplx(0.0)) throw SingularCoefficientError("division by zero in coefficient");
            return arg(0) / d;
        }
        case Op::Mod: {
            const long long a = as_integer(arg(0), "%");
            const long long b = as_integer(arg(1), "%");
            if (b == 0) throw SemanticError("modulo by zero");
            return static_cast<double>(((a % b) + b) % b);
        }
        case Op::Pow: {
            const cplx base = arg(0);
            const cplx e = arg(1);
            const double er = std::round(e.real());
            if (e.imag() == 0.0 && e.real() == er && std::abs(er) < 1e6) {
                return int_pow(base, static_cast<long long>(er));
            }
            if (base.imag() == 0.0 && base.real() >= 0.0 && e.imag() == 0.0) {
                return std::pow(base.real(), e.real());
            }
            return std::pow(base, e);
        }
        case Op::Eq: return std::abs(arg(0) - arg(1)) < 1e-12 ? 1.0 : 0.0;
        case Op::Ne: return std::abs(arg(0) - arg(1)) < 1e-12 ? 0.0 : 1.0;
        case Op::Lt: return arg(0).real() < arg(1).real() ? 1.0 : 0.0;
        case Op::Le: return arg(0).real() <= arg(1).real() ? 1.0 : 0.0;
        case Op::Gt: return arg(0).real() > arg(1).real() ? 1.0 : 0.0;
        case Op::Ge: return arg(0).real() >= arg(1).real() ? 1.0 : 0.0;
        case Op::And: return truth(arg(0)) && truth(arg(1)) ? 1.0 : 0.0;
        case Op::Or: return truth(arg(0)) || truth(arg(1)) ? 1.0 : 0.0;
        case Op::Call: break;
    }

    const std::string& fn = n.name;
    if (fn == "INT") {
        if (!env.integral) throw SemanticError("INT(f,0,T) is not available in this context");
        return env.integral();
    }
    if (fn == "sum" || fn == "prod") {
        if (n.args[0]->op != Op::Variable) throw SemanticError(fn + " needs a loop variable");
        const std::string& var = n.args[0]->name;
        const long long lo = as_integer(arg(1), fn.c_str());
        const long long hi = as_integer(arg(2), fn.c_str());
        auto saved = env.bound.find(var) != env.bound.end() ? std::optional<cplx>(env.bound[var])
                                                            : std::nullopt;
        cplx acc = fn == "sum" ? cplx(0.0) : cplx(1.0);
        for (long long k = lo; k <= hi; ++k) {
            env.bound[var] = static_cast<double>(k);
            const cplx v = evaluate(*n.args[3], env);
            acc = fn == "sum" ? acc + v : acc * v;
        }
        if (saved) env.bound[var] = *saved;
        else env.bound.erase(var);
        return acc;
    }
    if (fn == "gcd") {
        return static_cast<double>(std::gcd(as_integer(arg(0), "gcd"), as_integer(arg(1), "gcd")));
    }
    if (fn == "sqrt") {
        const cplx v = arg(0);
        if (v.imag() == 0.0 && v.real() >= 0.0) return std::sqrt(v.real());
        return std::sqrt(v);
    }
    if (fn == "abs") return std::abs(arg(0));
    if (!env.view) throw SemanticError("function '" + fn + "' needs a modulus");
    if (fn == "Zu") {
        try {
            return env.view->zeta(arg(0));
        } catch (const PoleError&) {
            throw SingularCoefficientError("Zu argument sits on a pole");
        }
    }
    return eval_jacobi(fn, arg(0), env);
}

bool evaluate_predicate(const NodePtr& node, int p, int r, int s, int t) {
    if (!node) return true;
    Environment env;
    env.p = p;
    env.r = r;
    env.s = s;
    env.t = t;
    return evaluate(*node, env) != cplx(0.0);
}

void collect_names(const Node& node, std::vector<std::string>& variables,
                   std::vector<std::string>& functions) {
    auto add = [](std::vector<std::string>& v, const std::string& s) {
        if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
    };
    if (node.op == Op::Variable) add(variables, node.name);
    if (node.op == Op::Call) add(functions, node.name);
    for (const auto& a : node.args) collect_names(*a, variables, functions);
}

}  // namespace expr
}  // namespace ellcyc
