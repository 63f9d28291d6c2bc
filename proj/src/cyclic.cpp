#include "ellcyc/cyclic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "ellcyc/quadrature.hpp"

namespace ellcyc {

cplx period_length(PeriodKind kind, const ModulusView& view) {
    return (kind == PeriodKind::TwoK ? 2.0 : 4.0) * view.K();
}

cplx eval_fn(FnKind fn, const JacobiTriple& t, double eps) {
    switch (fn) {
        case FnKind::sn: return t.sn;
        case FnKind::cn: return t.cn;
        case FnKind::dn: return t.dn;
        default: break;
    }
    return aux_from_triple(*parse_aux(to_string(fn)), t, eps);
}

namespace {

cplx ipow(cplx x, int n) {
    cplx r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// Triples at x0 + k*T/p, evaluated once per offset k.
class OffsetTriples {
public:
    OffsetTriples(cplx x0, cplx step, const ModulusView& view) : x0_(x0), step_(step), view_(view) {}

    const JacobiTriple& at(int k) {
        auto it = cache_.find(k);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(k, view_.triple(x0_ + static_cast<double>(k) * step_)).first->second;
    }

private:
    cplx x0_;
    cplx step_;
    const ModulusView& view_;
    std::map<int, JacobiTriple> cache_;
};

std::string describe_factor(const TermFactor& f) {
    std::string out(to_string(f.fn));
    out += "[";
    out += std::to_string(f.shift.multiple);
    if (f.shift.symbol) out += f.shift.symbol;
    out += "]";
    return out;
}

// Factor product at offset base (in units of T/p).
cplx factor_product(const CyclicTerm& term, int base, OffsetTriples& tri, const ShiftParams& sp, int j) {
    cplx acc = 1.0;
    for (const auto& f : term.factors) {
        const int k = base + f.shift.resolve(sp.r, sp.s, sp.t);
        try {
            acc *= ipow(eval_fn(f.fn, tri.at(k)), f.power);
        } catch (const PoleError& e) {
            throw PoleError("pole at j=" + std::to_string(j) + " in factor " + describe_factor(f) + ": " +
                                e.what(),
                            e.pole());
        } catch (const DivisionByZeroError& e) {
            throw PoleError("pole at j=" + std::to_string(j) + " in factor " + describe_factor(f) + ": " +
                                e.what(),
                            cplx(0.0));
        }
    }
    return acc;
}

void require_even(const CyclicTerm& term, int p) {
    if (term.pattern == SignPattern::alternating && p % 2 != 0) {
        throw ConstraintError("alternating sums need even p (got p=" + std::to_string(p) + ")");
    }
}

}  // namespace

cplx term_summand(const CyclicTerm& term, cplx z, const ModulusView& view, PeriodKind period,
                  const ShiftParams& sp) {
    const cplx step = period_length(period, view) / static_cast<double>(sp.p);
    OffsetTriples tri(z, step, view);
    if (term.kind == TermKind::sum) return factor_product(term, 0, tri, sp, 1);
    cplx acc = 1.0;
    for (int k = 0; k < sp.p; ++k) acc *= factor_product(term, k, tri, sp, k + 1);
    return acc / static_cast<double>(sp.p);
}

cplx eval_cyclic_sum(const CyclicTerm& term, cplx x0, const ModulusView& view, PeriodKind period,
                     const ShiftParams& sp) {
    if (sp.p < 1) throw ConstraintError("p must be positive");
    require_even(term, sp.p);
    const cplx step = period_length(period, view) / static_cast<double>(sp.p);
    OffsetTriples tri(x0, step, view);
    if (term.kind == TermKind::product) {
        cplx acc = 1.0;
        for (int j = 0; j < sp.p; ++j) acc *= factor_product(term, j, tri, sp, j + 1);
        return acc;
    }
    cplx acc = 0.0;
    for (int j = 0; j < sp.p; ++j) {
        const cplx v = factor_product(term, j, tri, sp, j + 1);
        acc += (term.pattern == SignPattern::alternating && j % 2 == 1) ? -v : v;
    }
    return acc;
}

cplx eval_cyclic_sum(const CyclicTerm& term, cplx x0, double m, PeriodKind period, const ShiftParams& sp) {
    return eval_cyclic_sum(term, x0, DirectView(m), period, sp);
}

cplx eval_basis_sum(const Basis& basis, bool alternating, cplx x0, const ModulusView& view,
                    PeriodKind period, int p) {
    if (basis.kind == Basis::Kind::constant) return 1.0;
    const cplx step = period_length(period, view) / static_cast<double>(p);
    cplx acc = 0.0;
    for (int j = 0; j < p; ++j) {
        const cplx x = x0 + static_cast<double>(j) * step;
        cplx v;
        if (basis.kind == Basis::Kind::zeta) {
            v = view.zeta(x);
        } else {
            const JacobiTriple t = view.triple(x);
            v = ipow(t.sn, basis.s) * ipow(t.cn, basis.c) * ipow(t.dn, basis.d);
        }
        acc += (alternating && j % 2 == 1) ? -v : v;
    }
    return acc;
}

cplx eval_coefficient(const expr::NodePtr& e, const ModulusView& view, const ShiftParams& sp) {
    expr::Environment env;
    env.view = &view;
    env.p = sp.p;
    env.r = sp.r;
    env.s = sp.s;
    env.t = sp.t;
    return expr::evaluate(e, env);
}

void check_constraints(const IdentitySpec& spec, const ShiftParams& sp) {
    if (spec.alternating() && sp.p % 2 != 0) {
        throw ConstraintError(spec.id + ": alternating sums need even p");
    }
    if (!expr::evaluate_predicate(spec.constraints, sp.p, sp.r, sp.s, sp.t)) {
        throw ConstraintError(spec.id + ": constraints fail for p=" + std::to_string(sp.p) +
                              " r=" + std::to_string(sp.r) + " s=" + std::to_string(sp.s) +
                              " t=" + std::to_string(sp.t));
    }
}

cplx PreparedIdentity::lhs_summand(cplx z) const {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < spec->lhs.size(); ++i) {
        acc += lhs_coeffs[i] * term_summand(spec->lhs[i].term, z, *view, spec->period, sp);
    }
    return acc;
}

PreparedIdentity prepare_identity(const IdentitySpec& spec, ViewPtr view, const ShiftParams& sp) {
    check_constraints(spec, sp);
    PreparedIdentity prep;
    prep.spec = &spec;
    prep.view = std::move(view);
    prep.sp = sp;

    expr::Environment env;
    env.view = prep.view.get();
    env.p = sp.p;
    env.r = sp.r;
    env.s = sp.s;
    env.t = sp.t;

    for (const auto& t : spec.lhs) prep.lhs_coeffs.push_back(expr::evaluate(t.coeff, env));

    if (spec.uses_integral()) {
        const cplx T = period_length(spec.period, *prep.view);
        if (T.imag() != 0.0) throw SemanticError(spec.id + ": INT(f,0,T) needs a real period");
        const PreparedIdentity* self = &prep;
        const auto res = integrate([self](double x) { return self->lhs_summand(x); }, 0.0, T.real(), 1e-12, 1e-13);
        prep.integral = res.value;
        const cplx value = res.value;
        env.integral = [value] { return value; };
    }
    for (const auto& d : spec.definitions) env.bound[d.name] = expr::evaluate(d.value, env);
    for (const auto& t : spec.rhs) prep.rhs_coeffs.push_back(expr::evaluate(t.coeff, env));
    return prep;
}

SidePair eval_prepared(const PreparedIdentity& prep, cplx x0) {
    const IdentitySpec& spec = *prep.spec;
    SidePair out{0.0, 0.0};
    for (std::size_t i = 0; i < spec.lhs.size(); ++i) {
        out.lhs += prep.lhs_coeffs[i] * eval_cyclic_sum(spec.lhs[i].term, x0, *prep.view, spec.period, prep.sp);
    }
    const bool alt = spec.alternating();
    for (std::size_t i = 0; i < spec.rhs.size(); ++i) {
        if (prep.rhs_coeffs[i] == cplx(0.0)) continue;
        try {
            out.rhs += prep.rhs_coeffs[i] *
                       eval_basis_sum(spec.rhs[i].basis, alt, x0, *prep.view, spec.period, prep.sp.p);
        } catch (const PoleError& e) {
            throw PoleError(std::string("basis sum: ") + e.what(), e.pole());
        }
    }
    return out;
}

SidePair eval_identity(const IdentitySpec& spec, cplx x0, ViewPtr view, const ShiftParams& sp) {
    return eval_prepared(prepare_identity(spec, std::move(view), sp), x0);
}

double relative_residual(cplx lhs, cplx rhs) {
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
    return std::abs(lhs - rhs) / scale;
}

// ---------------------------------------------------------------------------

cplx GridPoint::at(const ModulusView& view) const {
    return {re, im_frac * view.Kprime().real() / 4.0};
}

SampleGrid default_grid(std::uint64_t seed, int random_points) {
    SampleGrid g;
    g.seed = seed;
    for (int k = 0; k < 8; ++k) g.base_points.push_back({0.1 + 0.3 * k, 0.0});
    std::mt19937_64 rng(seed);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int k = 0; k < random_points; ++k) {
        const double re = 2.0 * uniform();
        const double im = 0.999 * (2.0 * uniform() - 1.0);
        g.base_points.push_back({re, im});
    }
    g.moduli = {0.1, 0.5, 0.9, 0.99};
    return g;
}

std::vector<int> default_p_values(Family family) {
    switch (family) {
        case Family::MI_III:
        case Family::MI_IV: return {3, 5, 7};
        case Family::MI_I_alt:
        case Family::MI_II_alt: return {4, 6, 8};
        default: return {2, 3, 4, 5, 6, 7, 8};
    }
}

std::optional<ShiftParams> representative_params(const IdentitySpec& spec) {
    for (int p : default_p_values(spec.family)) {
        const auto c = neighbor_choices(spec, p);
        if (!c.empty()) return c.front();
    }
    return std::nullopt;
}

std::vector<ShiftParams> neighbor_choices(const IdentitySpec& spec, int p) {
    const bool use_r = spec.uses_symbol('r');
    const bool use_s = spec.uses_symbol('s');
    const bool use_t = spec.uses_symbol('t');
    auto ok = [&](int r, int s, int t) {
        try {
            ShiftParams sp{p, r, s, t};
            check_constraints(spec, sp);
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    std::vector<int> rs = {1};
    if (use_r) {
        for (int r = 2; r <= p - 2; ++r) {
            if (std::gcd(r, p) == 1) {
                rs.push_back(r);
                break;
            }
        }
    }
    std::vector<ShiftParams> out;
    for (int r : rs) {
        if (!use_s && !use_t) {
            if (ok(r, 0, 0)) out.push_back({p, r, 0, 0});
            continue;
        }
        bool found = false;
        for (int s = 1; s < p && !found; ++s) {
            if (s == r) continue;
            if (!use_t) {
                if (ok(r, s, 0)) {
                    out.push_back({p, r, s, 0});
                    found = true;
                }
                continue;
            }
            for (int t = s + 1; t < p && !found; ++t) {
                if (t == r) continue;
                if (ok(r, s, t)) {
                    out.push_back({p, r, s, t});
                    found = true;
                }
            }
        }
    }
    return out;
}

namespace {

struct Combo {
    double m;
    ShiftParams sp;
};

template <typename F>
void run_loop(const ExecPolicy& policy, long n, F&& body) {
    if (policy.kind == ExecPolicy::Kind::serial) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    const int threads = policy.threads > 0 ? policy.threads : 0;
    if (threads > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (long i = 0; i < n; ++i) body(i);
    } else {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) body(i);
    }
}

}  // namespace

VerificationReport verify(const IdentitySpec& spec, const SampleGrid& grid, double tol, ExecPolicy policy) {
    VerificationReport rep;
    rep.id = spec.id;
    rep.family = spec.family;
    rep.tolerance = tol;
    rep.seed = grid.seed;

    std::vector<Combo> combos;
    const std::vector<int> ps = grid.p_values.empty() ? default_p_values(spec.family) : grid.p_values;
    for (double m : grid.moduli) {
        for (int p : ps) {
            if (grid.neighbor_params.empty()) {
                for (const auto& sp : neighbor_choices(spec, p)) combos.push_back({m, sp});
            } else {
                for (const auto& [r, s, t] : grid.neighbor_params) {
                    ShiftParams sp{p, r, s, t};
                    try {
                        check_constraints(spec, sp);
                    } catch (const ConstraintError&) {
                        continue;
                    }
                    combos.push_back({m, sp});
                }
            }
        }
    }

    // Coefficients (and INT) once per combination.
    std::vector<std::optional<PreparedIdentity>> prepared(combos.size());
    std::vector<std::string> combo_error(combos.size());
    std::map<double, ViewPtr> views;
    for (double m : grid.moduli) views.emplace(m, make_direct_view(m));
    run_loop(policy, static_cast<long>(combos.size()), [&](long i) {
        try {
            prepared[i] = prepare_identity(spec, views.at(combos[i].m), combos[i].sp);
        } catch (const SingularCoefficientError& e) {
            combo_error[i] = std::string("singular coefficient: ") + e.what();
        } catch (const ConstraintError& e) {
            combo_error[i] = std::string("constraint: ") + e.what();
        } catch (const Error& e) {
            combo_error[i] = std::string("error: ") + e.what();
        }
    });

    const std::size_t npts = grid.base_points.size();
    const long total = static_cast<long>(combos.size() * npts);
    std::vector<std::optional<Sample>> samples(total);
    std::vector<std::string> sample_error(total);
    run_loop(policy, total, [&](long idx) {
        const std::size_t c = idx / npts;
        const std::size_t k = idx % npts;
        if (!prepared[c]) return;
        const PreparedIdentity& prep = *prepared[c];
        const cplx x0 = grid.base_points[k].at(*prep.view);
        try {
            const SidePair sides = eval_prepared(prep, x0);
            samples[idx] = Sample{x0, combos[c].m, combos[c].sp, sides.lhs, sides.rhs,
                                  relative_residual(sides.lhs, sides.rhs)};
        } catch (const PoleError& e) {
            sample_error[idx] = std::string("pole: ") + e.what();
        } catch (const Error& e) {
            sample_error[idx] = std::string("error: ") + e.what();
        }
    });

    for (std::size_t c = 0; c < combos.size(); ++c) {
        if (!prepared[c]) {
            rep.skipped.push_back({combos[c].m, combos[c].sp, std::nullopt, combo_error[c]});
            continue;
        }
        for (std::size_t k = 0; k < npts; ++k) {
            const std::size_t idx = c * npts + k;
            if (samples[idx]) {
                rep.samples.push_back(*samples[idx]);
            } else {
                rep.skipped.push_back({combos[c].m, combos[c].sp, grid.base_points[k].at(*prepared[c]->view),
                                       sample_error[idx]});
            }
        }
    }

    std::vector<double> rels;
    for (const auto& s : rep.samples) rels.push_back(s.rel_residual);
    if (!rels.empty()) {
        rep.max_rel = *std::max_element(rels.begin(), rels.end());
        std::sort(rels.begin(), rels.end());
        const std::size_t n = rels.size();
        rep.median_rel = n % 2 ? rels[n / 2] : 0.5 * (rels[n / 2 - 1] + rels[n / 2]);
    }
    const bool had_error = std::any_of(rep.skipped.begin(), rep.skipped.end(),
                                       [](const SkipRecord& r) { return r.reason.rfind("error:", 0) == 0; });
    rep.pass = !had_error && !rep.samples.empty() && rep.max_rel < tol && !std::isnan(rep.max_rel);
    return rep;
}

std::vector<VerificationReport> verify_all(const std::vector<const IdentitySpec*>& specs,
                                           const SampleGrid& grid, double tol, ExecPolicy policy) {
    std::vector<const IdentitySpec*> ordered = specs;
    std::sort(ordered.begin(), ordered.end(),
              [](const IdentitySpec* a, const IdentitySpec* b) { return a->id < b->id; });
    std::vector<VerificationReport> out(ordered.size());
    run_loop(policy, static_cast<long>(ordered.size()),
             [&](long i) { out[i] = verify(*ordered[i], grid, tol, ExecPolicy::serial()); });
    return out;
}

}  // namespace ellcyc
