#pragma once

// Identity catalog: data model, text parser and printer.
// The grammar is documented in docs/catalog.ebnf.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ellcyc/errors.hpp"
#include "ellcyc/expr.hpp"

namespace ellcyc {

enum class FnKind { sn, cn, dn, nd, cd, sd, ns, cs, ds, nc, dc, sc };

std::string_view to_string(FnKind fn);
std::optional<FnKind> parse_fn(std::string_view name);

/// Signed exponents of (sn, cn, dn) represented by one function, e.g. cs -> (-1, 1, 0).
struct Exponents {
    int s = 0;
    int c = 0;
    int d = 0;
};
Exponents exponents_of(FnKind fn);

/// Shift in units of T/p: multiple * symbol, where symbol is one of r, s, t
/// or absent (a plain integer).
struct Shift {
    int multiple = 0;
    char symbol = 0;  // 0, 'r', 's' or 't'

    int resolve(int r, int s, int t) const;
    bool operator==(const Shift&) const = default;
};

struct TermFactor {
    FnKind fn = FnKind::dn;
    Shift shift;
    int power = 1;
    bool operator==(const TermFactor&) const = default;
};

enum class SignPattern { uniform, alternating };
enum class TermKind { sum, product };

/// sum: S = sum_j w_j prod_f fn(x_j + shift)^power.
/// product: P = prod_j prod_f fn(x_j + shift)^power; the sign pattern then
/// records how P behaves under x0 -> x0 + T/p (it is (1/p) sum_j w_j g(x_j)
/// for g(z) = prod_k prod_f fn(z + kT/p + shift)).
struct CyclicTerm {
    TermKind kind = TermKind::sum;
    SignPattern pattern = SignPattern::uniform;
    std::vector<TermFactor> factors;
    bool operator==(const CyclicTerm&) const = default;
};

struct LhsTerm {
    expr::NodePtr coeff;  // never null; 1 when omitted
    CyclicTerm term;
};

/// Right-hand side basis: a constant, the alternating zeta sum, or a sum of
/// sn^s cn^c dn^d.
struct Basis {
    enum class Kind { constant, zeta, monomial };
    Kind kind = Kind::constant;
    int s = 0;
    int c = 0;
    int d = 0;

    std::string tag() const;
    static std::optional<Basis> from_tag(std::string_view tag);
    bool operator==(const Basis&) const = default;
};

struct RhsTerm {
    expr::NodePtr coeff;
    Basis basis;
};

enum class Family { MI_I, MI_II, MI_III, MI_IV, MI_I_alt, MI_II_alt, direct };
std::string_view to_string(Family f);
std::optional<Family> parse_family(std::string_view name);

enum class PeriodKind { TwoK, FourK };
std::string_view to_string(PeriodKind t);

struct Definition {
    std::string name;
    expr::NodePtr value;
};

struct IdentitySpec {
    std::string id;
    Family family = Family::direct;
    PeriodKind period = PeriodKind::TwoK;
    expr::NodePtr constraints;  // may be null
    std::vector<Definition> definitions;
    std::vector<LhsTerm> lhs;
    std::vector<RhsTerm> rhs;
    std::vector<std::string> flags;

    bool has_flag(std::string_view flag) const;
    bool alternating() const;
    bool uses_symbol(char symbol) const;
    bool uses_integral() const;
    /// Number of (sn, cn, dn) factors per term used for the (P, Q) parity.
    /// Product terms count their factors p times.
    std::pair<int, int> parity(int p) const;
};

bool operator==(const IdentitySpec& a, const IdentitySpec& b);

struct CatalogFile {
    int version = 1;
    double tolerance = 1e-9;
    std::vector<IdentitySpec> identities;

    const IdentitySpec* find(std::string_view id) const;
};

/// Family implied by a (P, Q) parity and sign pattern.
Family family_for(int P, int Q, bool alternating);

CatalogFile parse_catalog(std::string_view text);
std::string print_catalog(const CatalogFile& file);
std::string print_identity(const IdentitySpec& spec);

/// Parses a bare product of factors such as "dn[0]^2*dn[+1]^2".
std::vector<TermFactor> parse_factor_product(std::string_view text);

/// Structural checks shared by the parser and the corpus tests: Z never in
/// the LHS, basis parity consistent with the LHS, declared family matches
/// the parity at a representative p. Throws SemanticError.
void validate(const IdentitySpec& spec);

/// Smallest p in the default family range satisfying the constraints with
/// r = 1 and some 2 <= s < t < p (0 when unused). Returns nullopt if none.
std::optional<int> representative_p(const IdentitySpec& spec);

}  // namespace ellcyc
