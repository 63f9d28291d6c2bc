#pragma once

// Cyclic and alternating sums, identity evaluation and grid verification.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellcyc/catalog.hpp"
#include "ellcyc/modulus_view.hpp"

namespace ellcyc {

struct ShiftParams {
    int p = 0;
    int r = 1;
    int s = 0;
    int t = 0;
};

/// T = 2K or 4K of the view.
cplx period_length(PeriodKind kind, const ModulusView& view);

/// One Jacobi or auxiliary function from a precomputed triple. Throws
/// DivisionByZeroError on a vanishing denominator.
cplx eval_fn(FnKind fn, const JacobiTriple& t, double eps = kDefaultPoleEps);

/// g(z) with S(x0) = sum_j w_j g(x_j). For a sum term g is the factor
/// product; for a product term g(z) = (1/p) prod_k prod_f fn(z + kT/p + ...).
cplx term_summand(const CyclicTerm& term, cplx z, const ModulusView& view, PeriodKind period,
                  const ShiftParams& sp);

/// Direct p-term evaluation at x_j = x0 + (j-1)T/p. Alternating terms need
/// even p (ConstraintError otherwise). Pole hits raise PoleError naming j
/// and the factor.
cplx eval_cyclic_sum(const CyclicTerm& term, cplx x0, const ModulusView& view, PeriodKind period,
                     const ShiftParams& sp);
cplx eval_cyclic_sum(const CyclicTerm& term, cplx x0, double m, PeriodKind period, const ShiftParams& sp);

/// sum_j w_j sn^a cn^b dn^c(x_j), sum_j w_j Z(x_j) or 1.
cplx eval_basis_sum(const Basis& basis, bool alternating, cplx x0, const ModulusView& view,
                    PeriodKind period, int p);

/// Coefficient with only (p, r, s, t) and the view bound.
cplx eval_coefficient(const expr::NodePtr& e, const ModulusView& view, const ShiftParams& sp);

/// Throws ConstraintError unless (p, r, s, t) satisfy the identity.
void check_constraints(const IdentitySpec& spec, const ShiftParams& sp);

/// Both sides' coefficients bound for one (modulus, p, r, s, t).
struct PreparedIdentity {
    const IdentitySpec* spec = nullptr;
    ViewPtr view;
    ShiftParams sp;
    std::vector<cplx> lhs_coeffs;
    std::vector<cplx> rhs_coeffs;
    std::optional<cplx> integral;  // INT(f,0,T) when the RHS uses it

    /// Sum of coefficient * summand over the LHS terms.
    cplx lhs_summand(cplx z) const;
};

/// Checks constraints, evaluates let-definitions and coefficients. Throws
/// ConstraintError or SingularCoefficientError.
PreparedIdentity prepare_identity(const IdentitySpec& spec, ViewPtr view, const ShiftParams& sp);

struct SidePair {
    cplx lhs;
    cplx rhs;
};

SidePair eval_prepared(const PreparedIdentity& prep, cplx x0);
SidePair eval_identity(const IdentitySpec& spec, cplx x0, ViewPtr view, const ShiftParams& sp);

/// |L - R| / max(|L|, |R|, 1).
double relative_residual(cplx lhs, cplx rhs);

// ---------------------------------------------------------------------------
// Grids and reports.

/// A base point x0 = re + i * im_frac * K'(m) / 4.
struct GridPoint {
    double re = 0.0;
    double im_frac = 0.0;
    cplx at(const ModulusView& view) const;
};

struct SampleGrid {
    std::vector<GridPoint> base_points;
    std::vector<double> moduli;
    std::vector<int> p_values;  // empty: family default
    /// Explicit (r, s, t) triples; empty: derived per p.
    std::vector<std::array<int, 3>> neighbor_params;
    std::uint64_t seed = 0;
};

/// Real points 0.1 + 0.3k (k = 0..7) plus `random_points` complex points
/// from mt19937_64(seed).
SampleGrid default_grid(std::uint64_t seed, int random_points = 8);

std::vector<int> default_p_values(Family family);

/// (r, s, t) choices for one p: r in {1, smallest coprime r in [2, p-2]},
/// s and t the first admissible values; only symbols the identity uses vary.
std::vector<ShiftParams> neighbor_choices(const IdentitySpec& spec, int p);

/// First admissible (p, r, s, t) over default_p_values(family), or nullopt.
std::optional<ShiftParams> representative_params(const IdentitySpec& spec);

struct Sample {
    cplx x0;
    double m = 0.0;
    ShiftParams sp;
    cplx lhs;
    cplx rhs;
    double rel_residual = 0.0;
};

struct SkipRecord {
    double m = 0.0;
    ShiftParams sp;
    std::optional<cplx> x0;  // empty: whole combination skipped
    std::string reason;
};

struct VerificationReport {
    std::string id;
    Family family = Family::direct;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    std::vector<Sample> samples;
    std::vector<SkipRecord> skipped;
    double max_rel = 0.0;
    double median_rel = 0.0;
    bool pass = false;
};

struct ExecPolicy {
    enum class Kind { serial, parallel };
    Kind kind = Kind::parallel;
    int threads = 0;  // 0: OpenMP default

    static ExecPolicy serial() { return {Kind::serial, 1}; }
    static ExecPolicy parallel(int threads = 0) { return {Kind::parallel, threads}; }
};

VerificationReport verify(const IdentitySpec& spec, const SampleGrid& grid, double tol,
                          ExecPolicy policy = ExecPolicy::parallel());

/// Verifies several identities; the result is ordered by id.
std::vector<VerificationReport> verify_all(const std::vector<const IdentitySpec*>& specs,
                                           const SampleGrid& grid, double tol, ExecPolicy policy);

}  // namespace ellcyc
