#include "ellcyc/master.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ellcyc/monomial.hpp"
#include "ellcyc/quadrature.hpp"

namespace ellcyc {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

std::vector<cplx> trapezoid_alphas(const ComplexFn& f, cplx center, int max_order, double radius, int n) {
    std::vector<cplx> out(max_order, 0.0);
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * kPi * k / n;
        const cplx e = std::polar(1.0, theta);
        const cplx v = f(center + radius * e);
        cplx w = v;
        for (int l = 1; l <= max_order; ++l) {
            w *= radius * e;
            out[l - 1] += w;
        }
    }
    for (auto& a : out) a /= static_cast<double>(n);
    return out;
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

PoleData extract_alphas(const ComplexFn& f, cplx center, int max_order, double radius, double neighbor_distance) {
    if (neighbor_distance > 0.0 && radius >= neighbor_distance / 3.0) {
        throw DomainError("extract_alphas: contour radius too large for the pole spacing");
    }
    if (max_order < 1) max_order = 1;
    PoleData pd;
    pd.center = center;
    pd.radius = radius;
    std::vector<cplx> prev = trapezoid_alphas(f, center, max_order, radius, 64);
    bool converged = false;
    int n = 64;
    while (n < 4096) {
        n *= 2;
        std::vector<cplx> cur = trapezoid_alphas(f, center, max_order, radius, n);
        double diff = 0.0, scale = 1.0;
        for (int l = 0; l < max_order; ++l) {
            diff = std::max(diff, std::abs(cur[l] - prev[l]));
            scale = std::max(scale, std::abs(cur[l]));
        }
        prev = std::move(cur);
        if (diff <= 1e-9 * scale) {
            converged = true;
            break;
        }
    }
    if (!converged) throw ConvergenceError("extract_alphas: contour sum not stable at N = 4096");
    pd.nodes = n;
    int order = 0;
    for (int l = 1; l <= max_order; ++l) {
        if (std::abs(prev[l - 1]) > 1e-8) order = l;
    }
    prev.resize(order);
    pd.order = order;
    pd.alphas = std::move(prev);
    return pd;
}

double default_radius(const ModulusContext& ctx, int p) {
    return 0.25 * std::min(2.0 * ctx.K / p, 2.0 * ctx.Kprime);
}

GammaSet gamma_set(const ComplexFn& f, int p, PeriodKind period, GammaVariant variant, const ModulusContext& ctx,
                   int max_order, double radius) {
    if (variant == GammaVariant::alternating && p % 2 != 0) {
        throw ConstraintError("alternating gamma needs even p");
    }
    if (radius <= 0.0) radius = default_radius(ctx, p);
    const double T = (period == PeriodKind::TwoK ? 2.0 : 4.0) * ctx.K;
    const double spacing = std::min(2.0 * ctx.K / p, 2.0 * ctx.Kprime);
    GammaSet gs;
    gs.variant = variant;
    std::vector<cplx> sum(max_order, 0.0);
    for (int w = 0; w < p; ++w) {
        const cplx c(w * T / p, ctx.Kprime);
        PoleData pd = extract_alphas(f, c, max_order, radius, spacing);
        const double weight = (variant == GammaVariant::alternating && w % 2 == 1) ? -1.0 : 1.0;
        for (int l = 1; l <= pd.order; ++l) sum[l - 1] += weight * pd.alpha(l);
        gs.poles.push_back(std::move(pd));
    }
    int order = 0;
    for (int l = 1; l <= max_order; ++l) {
        if (std::abs(sum[l - 1]) > 1e-8) order = l;
    }
    sum.resize(order);
    gs.gammas = std::move(sum);
    return gs;
}

// ---------------------------------------------------------------------------

std::string_view to_string(ArchetypalKind kind) {
    switch (kind) {
        case ArchetypalKind::sigma1: return "sigma1";
        case ArchetypalKind::sigma2: return "sigma2";
        case ArchetypalKind::sigma3: return "sigma3";
        case ArchetypalKind::sigma4: return "sigma4";
        case ArchetypalKind::sigma1A: return "sigma1A";
        case ArchetypalKind::sigma2A: return "sigma2A";
    }
    return "";
}

PeriodKind period_of(ArchetypalKind kind) {
    return kind == ArchetypalKind::sigma3 || kind == ArchetypalKind::sigma4 ? PeriodKind::FourK
                                                                              : PeriodKind::TwoK;
}

namespace {

bool is_alternating(ArchetypalKind k) { return k == ArchetypalKind::sigma1A || k == ArchetypalKind::sigma2A; }

// Per-index decay ratio of the series terms at x0.
double decay_ratio(ArchetypalKind kind, const ModulusContext& ctx, cplx x0) {
    const double growth = std::exp(kPi * std::abs(x0.imag()) / ctx.K);
    if (period_of(kind) == PeriodKind::FourK) return std::sqrt(ctx.q * growth);
    return ctx.q * growth;
}

}  // namespace

int default_kmax(ArchetypalKind kind, const ModulusContext& ctx, cplx x0) {
    const double rho = decay_ratio(kind, ctx, x0);
    if (!(rho < 1.0)) {
        throw ConvergenceError("archetypal: nome series does not decay here; reduce m or |Im x0|");
    }
    if (rho == 0.0) return 1;
    // Smallest k with k rho^k < 1e-16 (1 - rho); the factor k covers sigma2.
    int k = 1;
    while (k * std::pow(rho, k) >= 1e-16 * (1.0 - rho)) {
        if (++k > 200000) throw ConvergenceError("archetypal: tail bound unreachable; reduce m");
    }
    return k;
}

cplx archetypal(ArchetypalKind kind, cplx x0, const ModulusContext& ctx, int p, int k_max) {
    if (is_alternating(kind) && p % 2 != 0) throw ConstraintError("alternating archetypal sums need even p");
    if (p < 1) throw ConstraintError("p must be positive");
    if (k_max <= 0) k_max = default_kmax(kind, ctx, x0);
    const double K = ctx.K, q = ctx.q;
    const double sm = std::sqrt(ctx.m);
    const int ph = p / 2;
    cplx acc = 0.0;
    switch (kind) {
        case ArchetypalKind::sigma1:
            for (int n = p; n <= k_max; n += p) {
                acc += std::pow(q, n) / (1.0 + std::pow(q, 2 * n)) * std::cos(n * kPi * x0 / K);
            }
            return p * kPi / (2.0 * K) + 2.0 * p * kPi / K * acc;
        case ArchetypalKind::sigma2:
            for (int n = p; n <= k_max; n += p) {
                acc += n * std::pow(q, n) / (1.0 - std::pow(q, 2 * n)) * std::cos(n * kPi * x0 / K);
            }
            return p * ctx.E / K + 2.0 * p * kPi * kPi / (K * K) * acc;
        case ArchetypalKind::sigma3:
        case ArchetypalKind::sigma4:
            for (int k = 1; k <= k_max; k += 2) {
                if (k % p != 0) continue;
                const double qh = std::pow(q, 0.5 * k);
                const double qk = std::pow(q, k);
                if (kind == ArchetypalKind::sigma3) {
                    acc += qh / (1.0 - qk) * std::sin(k * kPi * x0 / (2.0 * K));
                } else {
                    acc += qh / (1.0 + qk) * std::cos(k * kPi * x0 / (2.0 * K));
                }
            }
            return 2.0 * p * kPi / (K * sm) * acc;
        case ArchetypalKind::sigma1A:
        case ArchetypalKind::sigma2A:
            for (int n = ph; n <= k_max; n += 2 * ph) {
                const double qn = std::pow(q, n), q2n = std::pow(q, 2 * n);
                if (kind == ArchetypalKind::sigma1A) {
                    acc += qn / (1.0 + q2n) * std::cos(n * kPi * x0 / K);
                } else {
                    acc += qn / (1.0 - q2n) * std::sin(n * kPi * x0 / K);
                }
            }
            return 2.0 * p * kPi / K * acc;
    }
    return 0.0;
}

cplx archetypal_derivative(ArchetypalKind kind, int n, cplx x0, const ModulusContext& ctx, int p) {
    if (n == 0) return archetypal(kind, x0, ctx, p);
    JacobiPoly base;
    int order = n;
    switch (kind) {
        case ArchetypalKind::sigma1:
        case ArchetypalKind::sigma1A: base = JacobiPoly::monomial(0, 0, 1); break;
        case ArchetypalKind::sigma2: base = JacobiPoly::monomial(0, 0, 2); break;
        case ArchetypalKind::sigma3: base = JacobiPoly::monomial(1, 0, 0); break;
        case ArchetypalKind::sigma4: base = JacobiPoly::monomial(0, 1, 0); break;
        case ArchetypalKind::sigma2A:
            // sum (-1)^{j-1} Z' = sum (-1)^{j-1} dn^2 since the E/K part cancels for even p.
            base = JacobiPoly::monomial(0, 0, 2);
            order = n - 1;
            break;
    }
    const JacobiPoly d = base.derivative(ctx.m, order);
    const double T = (period_of(kind) == PeriodKind::TwoK ? 2.0 : 4.0) * ctx.K;
    const bool alt = is_alternating(kind);
    cplx acc = 0.0;
    for (int j = 0; j < p; ++j) {
        const cplx v = d.evaluate(sncndn_complex(x0 + j * T / p, ctx.m));
        acc += (alt && j % 2 == 1) ? -v : v;
    }
    return acc;
}

// ---------------------------------------------------------------------------

Prediction predict(const ComplexFn& f, Family family, cplx x0, const ModulusContext& ctx, int p, int max_order) {
    Prediction out;
    const bool alt = family == Family::MI_I_alt || family == Family::MI_II_alt;
    const PeriodKind period = (family == Family::MI_III || family == Family::MI_IV) ? PeriodKind::FourK
                                                                                      : PeriodKind::TwoK;
    out.gammas = gamma_set(f, p, period, alt ? GammaVariant::alternating : GammaVariant::ordinary, ctx, max_order);
    const GammaSet& g = out.gammas;
    const int L = g.order();
    auto sign = [](int l) { return (l - 1) % 2 == 0 ? 1.0 : -1.0; };
    cplx acc = 0.0;
    switch (family) {
        case Family::MI_I:
        case Family::MI_I_alt: {
            const auto kind = alt ? ArchetypalKind::sigma1A : ArchetypalKind::sigma1;
            for (int l = 1; l <= L; ++l) {
                acc += sign(l) * g.gamma(l) / factorial(l - 1) * archetypal_derivative(kind, l - 1, x0, ctx, p);
            }
            out.value = kI * acc;
            break;
        }
        case Family::MI_II: {
            const auto res = integrate([&f](double x) { return f(x); }, 0.0, 2.0 * ctx.K, 1e-12, 1e-13);
            out.integral = res.value;
            acc = p / (2.0 * ctx.K) * (res.value + 2.0 * g.gamma(2) * ctx.E);
            for (int l = 2; l <= L; ++l) {
                acc += sign(l) * g.gamma(l) / factorial(l - 1) *
                       archetypal_derivative(ArchetypalKind::sigma2, l - 2, x0, ctx, p);
            }
            out.value = acc;
            break;
        }
        case Family::MI_II_alt:
            for (int l = 1; l <= L; ++l) {
                acc += sign(l) * g.gamma(l) / factorial(l - 1) *
                       archetypal_derivative(ArchetypalKind::sigma2A, l - 1, x0, ctx, p);
            }
            out.value = acc;
            break;
        case Family::MI_III:
        case Family::MI_IV: {
            const auto kind = family == Family::MI_III ? ArchetypalKind::sigma3 : ArchetypalKind::sigma4;
            for (int l = 1; l <= L; ++l) {
                acc += sign(l) * g.gamma(l) / factorial(l - 1) * archetypal_derivative(kind, l - 1, x0, ctx, p);
            }
            const double sm = std::sqrt(ctx.m);
            out.value = family == Family::MI_III ? sm * acc : kI * sm * acc;
            break;
        }
        case Family::direct: throw SemanticError("predict: direct identities have no master identity");
    }
    return out;
}

int max_pole_order(const IdentitySpec& spec, int p) {
    int best = 0;
    for (const auto& t : spec.lhs) {
        int n = 0;
        for (const auto& f : t.term.factors) {
            if (f.fn == FnKind::sn || f.fn == FnKind::cn || f.fn == FnKind::dn) n += f.power;
        }
        if (t.term.kind == TermKind::product) n *= p;
        best = std::max(best, n);
    }
    return best;
}

Prediction predict_identity(const PreparedIdentity& prep, cplx x0) {
    const IdentitySpec& spec = *prep.spec;
    const auto [P, Q] = spec.parity(prep.sp.p);
    const Family implied = family_for(P, Q, spec.alternating());
    if (implied != spec.family || implied == Family::direct) {
        throw SemanticError("predict: family mismatch for " + spec.id);
    }
    const auto* direct = dynamic_cast<const DirectView*>(prep.view.get());
    if (!direct) throw SemanticError("predict: needs a direct modulus view");
    auto f = [&prep](cplx z) { return prep.lhs_summand(z); };
    return predict(f, spec.family, x0, direct->context(), prep.sp.p, max_pole_order(spec, prep.sp.p) + 1);
}

double poisson_check(const ComplexFn& f, cplx x0, const ModulusContext& ctx, int p, PeriodKind period, int k_max) {
    const double T = (period == PeriodKind::TwoK ? 2.0 : 4.0) * ctx.K;
    if (k_max <= 0) {
        k_max = default_kmax(ArchetypalKind::sigma2, ctx, x0);
        if (period == PeriodKind::FourK) k_max *= 2;
    }
    int n = 256;
    while (n < 4 * k_max) n *= 2;
    std::vector<cplx> samples(n);
    for (int i = 0; i < n; ++i) samples[i] = f(T * i / n);
    cplx series = 0.0;
    for (int k = -k_max; k <= k_max; ++k) {
        if (k % p != 0) continue;
        cplx ck = 0.0;
        for (int i = 0; i < n; ++i) ck += samples[i] * std::polar(1.0, -2.0 * kPi * k * i / n);
        ck /= static_cast<double>(n);
        series += ck * std::exp(2.0 * kPi * kI * static_cast<double>(k) * x0 / T);
    }
    series *= static_cast<double>(p);
    cplx direct = 0.0;
    for (int j = 0; j < p; ++j) direct += f(x0 + j * T / p);
    return std::abs(direct - series);
}

double zero_mode_gap(const ComplexFn& f, const ModulusContext& ctx, int p, int max_order) {
    const GammaSet g = gamma_set(f, p, PeriodKind::TwoK, GammaVariant::ordinary, ctx, max_order);
    const auto res = integrate([&f](double x) { return f(x); }, 0.0, 2.0 * ctx.K, 1e-12, 1e-13);
    return std::abs(res.value - kI * kPi * g.gamma(1));
}

}  // namespace ellcyc
