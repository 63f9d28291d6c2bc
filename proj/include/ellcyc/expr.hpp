#pragma once

// Coefficient and constraint expression language.
//
//   expr    := or
//   or      := and ('||' and)*
//   and     := eq ('&&' eq)*
//   eq      := rel (('==' | '!=') rel)*
//   rel     := add (('<' | '<=' | '>' | '>=') add)*
//   add     := mul (('+' | '-') mul)*
//   mul     := unary (('*' | '/' | '%') unary)*
//   unary   := ('-' | '!') unary | power
//   power   := primary ('^' unary)?
//   primary := number | ident | call | '(' expr ')'
//   call    := ident '(' expr (',' expr)* ')'
//
// Identifiers: m p r s t K Kp E Ep pi, shift arguments a a' a'' (2rK/p,
// 2sK/p, 2tK/p) and b b' b'' (4rK/p, ...), plus loop variables bound by
// sum(v, lo, hi, body) and prod(v, lo, hi, body).
// Functions: sn cn dn nd cd sd ns cs ds nc dc sc Zu sqrt gcd abs and the
// quadrature token INT(f,0,T).

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ellcyc/errors.hpp"
#include "ellcyc/modulus_view.hpp"

namespace ellcyc::expr {

enum class Op {
    Number,
    Variable,
    Negate,
    Not,
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Pow,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
    Call,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    Op op = Op::Number;
    double number = 0.0;
    std::string name;  // variable or function name
    std::vector<NodePtr> args;
};

bool equal(const Node& a, const Node& b);
bool equal(const NodePtr& a, const NodePtr& b);

NodePtr number(double v);
NodePtr variable(std::string name);
NodePtr unary(Op op, NodePtr arg);
NodePtr binary(Op op, NodePtr lhs, NodePtr rhs);
NodePtr call(std::string name, std::vector<NodePtr> args);

// ---------------------------------------------------------------------------
// Tokens, shared with the catalog parser.

enum class Tok {
    End,
    Number,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Assign,
    EqEq,
    NotEq,
    Less,
    LessEq,
    Greater,
    GreaterEq,
    AndAnd,
    OrOr,
    Bang,
    String,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double value = 0.0;
    int column = 1;  // 1-based
};

std::string describe(Tok kind);

/// Splits one line. Columns are offset by `first_column - 1`.
std::vector<Token> tokenize(std::string_view text, int line, int first_column = 1);

/// Cursor over a token vector with error reporting.
class TokenStream {
public:
    TokenStream(std::vector<Token> tokens, int line);

    const Token& peek(std::size_t ahead = 0) const;
    Token next();
    bool accept(Tok kind);
    Token expect(Tok kind, std::vector<std::string> expected = {});
    bool at_end() const { return peek().kind == Tok::End; }
    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const;
    int line() const { return line_; }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int line_;
};

/// Parses an expression from the stream. When `stop_before_keyword` is set,
/// a '*' directly followed by one of those identifiers ends the expression
/// without consuming the '*'.
NodePtr parse_expression(TokenStream& ts, const std::vector<std::string>& stop_before_keyword = {});

/// Parses a complete expression string.
NodePtr parse(std::string_view text, int line = 1);

/// Canonical text with minimal parentheses; parse(print(e)) is structurally
/// equal to e.
std::string print(const Node& node);
std::string print(const NodePtr& node);

// ---------------------------------------------------------------------------
// Evaluation.

struct Environment {
    const ModulusView* view = nullptr;
    int p = 0;
    int r = 0;
    int s = 0;
    int t = 0;
    /// Provider for INT(f,0,T); absent means the token is not allowed here.
    std::function<cplx()> integral;
    /// Denominator magnitude below which a coefficient function is singular.
    double singular_eps = 1e-10;
    std::map<std::string, cplx> bound;
};

cplx evaluate(const Node& node, Environment& env);
cplx evaluate(const NodePtr& node, Environment& env);

/// Evaluates a constraint predicate with only p, r, s, t bound.
bool evaluate_predicate(const NodePtr& node, int p, int r, int s, int t);

/// Collects free identifiers and called function names.
void collect_names(const Node& node, std::vector<std::string>& variables,
                   std::vector<std::string>& functions);

/// True for functions allowed in coefficient position.
bool is_known_function(std::string_view name);

}  // namespace ellcyc::expr
