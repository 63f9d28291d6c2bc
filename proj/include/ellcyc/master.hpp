#pragma once

// Laurent coefficients on the pole line Im z = K', archetypal nome series,
// the master-identity predictor and the Poisson-summation cross-check.

#include <functional>
#include <vector>

#include "ellcyc/catalog.hpp"
#include "ellcyc/cyclic.hpp"
#include "ellcyc/elliptic_core.hpp"

namespace ellcyc {

using ComplexFn = std::function<cplx(cplx)>;

struct PoleData {
    cplx center;
    int order = 0;
    std::vector<cplx> alphas;  // alphas[l-1] = alpha_l
    double radius = 0.0;
    int nodes = 0;

    cplx alpha(int l) const { return l >= 1 && l <= static_cast<int>(alphas.size()) ? alphas[l - 1] : 0.0; }
};

/// alpha_l = (1/2 pi i) \oint f(z) (z - c)^{l-1} dz by the trapezoid rule on
/// a circle of the given radius, N = 64, 128, ... 4096 until successive
/// values agree to 1e-9. Orders above the last |alpha| > 1e-8 are trimmed.
/// `neighbor_distance` (if positive) enforces radius < distance / 3.
PoleData extract_alphas(const ComplexFn& f, cplx center, int max_order, double radius,
                        double neighbor_distance = 0.0);

enum class GammaVariant { ordinary, alternating };

struct GammaSet {
    GammaVariant variant = GammaVariant::ordinary;
    std::vector<cplx> gammas;  // gammas[l-1] = gamma_l
    std::vector<PoleData> poles;

    cplx gamma(int l) const { return l >= 1 && l <= static_cast<int>(gammas.size()) ? gammas[l - 1] : 0.0; }
    int order() const { return static_cast<int>(gammas.size()); }
};

/// Default contour radius 0.25 min(2K/p, 2K').
double default_radius(const ModulusContext& ctx, int p);

/// Poles at iK' + w T/p for w = 0..p-1. The alternating variant weights
/// pole w by (-1)^w and needs even p.
GammaSet gamma_set(const ComplexFn& f, int p, PeriodKind period, GammaVariant variant,
                   const ModulusContext& ctx, int max_order, double radius = 0.0);

enum class ArchetypalKind { sigma1, sigma2, sigma3, sigma4, sigma1A, sigma2A };

std::string_view to_string(ArchetypalKind kind);
PeriodKind period_of(ArchetypalKind kind);

/// Truncation index with the geometric tail below 1e-16 at base point x0.
/// Throws ConvergenceError when the ratio does not decay.
int default_kmax(ArchetypalKind kind, const ModulusContext& ctx, cplx x0);

/// Nome-series value of the archetypal sum (k_max <= 0: default_kmax).
cplx archetypal(ArchetypalKind kind, cplx x0, const ModulusContext& ctx, int p, int k_max = 0);

/// n-th derivative in x0: n = 0 is the series, n >= 1 sums the analytic
/// derivative polynomial directly (Z' = dn^2 - E/K for sigma2A).
cplx archetypal_derivative(ArchetypalKind kind, int n, cplx x0, const ModulusContext& ctx, int p);

struct Prediction {
    cplx value;
    GammaSet gammas;
    cplx integral;  // int_0^T f, used by MI-II
};

/// Right-hand side of the master identity for `family`.
Prediction predict(const ComplexFn& f, Family family, cplx x0, const ModulusContext& ctx, int p,
                   int max_order);

/// predict() for an identity's LHS summand, after checking the family
/// against the LHS parity (SemanticError on mismatch).
Prediction predict_identity(const PreparedIdentity& prep, cplx x0);

/// Largest pole order the LHS of `spec` can have on the pole line.
int max_pole_order(const IdentitySpec& spec, int p);

/// |direct S_p(x0) - p sum_{p|k} c_k e^{2 pi i k x0/T}| with trapezoid
/// Fourier coefficients c_k of f over one period.
double poisson_check(const ComplexFn& f, cplx x0, const ModulusContext& ctx, int p, PeriodKind period,
                     int k_max = 0);

/// |int_0^{2K} f - i pi gamma_1| for an MI-I summand.
double zero_mode_gap(const ComplexFn& f, const ModulusContext& ctx, int p, int max_order);

}  // namespace ellcyc
