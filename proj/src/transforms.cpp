#include "ellcyc/transforms.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "ellcyc/theta.hpp"

namespace ellcyc {

namespace {

const cplx kI(0.0, 1.0);

JacobiTriple jt(cplx z, double m) { return sncndn_complex(z, m); }

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::string_view to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::imaginary_shift: return "imaginary_shift";
        case TransformKind::complex_shift: return "complex_shift";
        case TransformKind::ratio_expand: return "ratio_expand";
        case TransformKind::weierstrass_form: return "weierstrass_form";
        case TransformKind::theta_form: return "theta_form";
    }
    return "";
}

// ---------------------------------------------------------------------------
// Shift transforms through the substitution views.

TransformedIdentity imaginary_shift(const IdentitySpec& spec, ViewPtr inner, const ShiftParams& sp) {
    auto view = std::make_shared<const ImaginaryShiftView>(std::move(inner));
    auto prep = std::make_shared<PreparedIdentity>(prepare_identity(spec, view, sp));
    TransformedIdentity t;
    t.kind = TransformKind::imaginary_shift;
    t.name = spec.id + " [imaginary shift, " + view->describe() + "]";
    t.eval = [prep, view](cplx u) { return eval_prepared(*prep, view->from_inner(u)); };
    return t;
}

TransformedIdentity imaginary_shift(const IdentitySpec& spec, double m, const ShiftParams& sp) {
    return imaginary_shift(spec, make_direct_view(m), sp);
}

TransformedIdentity complex_shift(const IdentitySpec& spec, ViewPtr inner, const ShiftParams& sp) {
    auto view = std::make_shared<const ReciprocalModulusView>(std::move(inner));
    auto prep = std::make_shared<PreparedIdentity>(prepare_identity(spec, view, sp));
    TransformedIdentity t;
    t.kind = TransformKind::complex_shift;
    t.name = spec.id + " [complex shift, " + view->describe() + "]";
    t.eval = [prep, view](cplx u) { return eval_prepared(*prep, view->from_inner(u)); };
    return t;
}

TransformedIdentity complex_shift(const IdentitySpec& spec, double m, const ShiftParams& sp) {
    return complex_shift(spec, make_direct_view(m), sp);
}

// ---------------------------------------------------------------------------
// Worked statements.

SidePair sn_sn_imaginary(cplx u, double m) {
    const ModulusContext ctx = make_context(m);
    return {jt(u, m).sn * jt(u + kI * ctx.Kprime, m).sn, 1.0 / std::sqrt(m)};
}

SidePair cn_cn_complex(cplx u, double m) {
    const ModulusContext ctx = make_context(m);
    const cplx w(ctx.K, ctx.Kprime);
    return {jt(u, m).cn * jt(u + w, m).cn, -kI * std::sqrt(1.0 - m) / std::sqrt(m)};
}

SidePair dn_product3_imaginary(cplx u, double m) {
    const ModulusContext ctx = make_context(m);
    const double qp = sncndn_real(2.0 * ctx.Kprime / 3.0, 1.0 - m).dn;
    const cplx w = kI * (4.0 * ctx.Kprime / 3.0);
    const cplx d0 = jt(u, m).dn, d1 = jt(u + w, m).dn, d2 = jt(u + 2.0 * w, m).dn;
    return {d0 * d1 * d2, -(1.0 - m) / (1.0 - qp * qp) * (d0 + d1 + d2)};
}

SidePair dsn_cyclic3_complex(cplx u, double m) {
    const ModulusContext ctx = make_context(m);
    const cplx w = 4.0 * cplx(ctx.K, ctx.Kprime) / 3.0;
    const cplx r = jt(2.0 * cplx(ctx.K, ctx.Kprime) / 3.0, m).cn;
    const JacobiTriple t0 = jt(u, m), t1 = jt(u + w, m), t2 = jt(u + 2.0 * w, m);
    const cplx lhs = t0.dn * t1.sn * t2.sn + t1.dn * t2.sn * t0.sn + t2.dn * t0.sn * t1.sn;
    return {lhs, -(1.0 + r) * (1.0 + r) * (t0.dn + t1.dn + t2.dn)};
}

SidePair aux_product_nd(cplx x, double m) {
    const ModulusContext ctx = make_context(m);
    return {aux(AuxCode::nd, x, m) * aux(AuxCode::nd, x + ctx.K, m), 1.0 / std::sqrt(1.0 - m)};
}

SidePair aux_product_cs(cplx x, double m) {
    const ModulusContext ctx = make_context(m);
    return {aux(AuxCode::cs, x, m) * aux(AuxCode::cs, x + ctx.K, m), -std::sqrt(1.0 - m)};
}

SidePair aux_product_sc(cplx x, double m) {
    const ModulusContext ctx = make_context(m);
    return {aux(AuxCode::sc, x, m) * aux(AuxCode::sc, x + ctx.K, m), -1.0 / std::sqrt(1.0 - m)};
}

std::vector<TransformedIdentity> worked_shift_examples(double m) {
    using K = TransformKind;
    auto bind = [m](SidePair (*fn)(cplx, double)) { return [m, fn](cplx u) { return fn(u, m); }; };
    return {
        {K::imaginary_shift, "sn sn(+iK') = 1/sqrt(m)", bind(sn_sn_imaginary)},
        {K::imaginary_shift, "dn dn(+4iK'/3) dn(+8iK'/3), p = 3", bind(dn_product3_imaginary)},
        {K::complex_shift, "cn cn(+K+iK') = -i sqrt(1-m)/sqrt(m)", bind(cn_cn_complex)},
        {K::complex_shift, "dn sn sn cyclic, shifts 4(K+iK')/3", bind(dsn_cyclic3_complex)},
    };
}

// ---------------------------------------------------------------------------
// Ratios.

std::string_view to_string(RatioId id) {
    switch (id) {
        case RatioId::cd_s: return "cn dn/sn";
        case RatioId::cd_s_pole: return "cn dn/sn (iK' form)";
        case RatioId::sd_c: return "sn dn/cn";
        case RatioId::sc_d: return "sn cn/dn";
        case RatioId::c_sd: return "cn/(sn dn)";
        case RatioId::s_cd: return "sn/(cn dn)";
        case RatioId::d_sc: return "dn/(sn cn)";
    }
    return "";
}

const std::vector<RatioId>& all_ratio_ids() {
    static const std::vector<RatioId> ids{RatioId::cd_s, RatioId::cd_s_pole, RatioId::sd_c, RatioId::sc_d,
                                          RatioId::c_sd, RatioId::s_cd,      RatioId::d_sc};
    return ids;
}

namespace {

cplx checked_div(cplx num, cplx den, const char* what) {
    if (std::abs(den) < kDefaultPoleEps) throw DivisionByZeroError(std::string("ratio_expand: ") + what + " vanishes");
    return num / den;
}

}  // namespace

SidePair ratio_expand(RatioId id, cplx x, double m) {
    const JacobiTriple t = jt(x, m);
    if (id == RatioId::cd_s_pole) {
        const ModulusContext ctx = make_context(m);
        const JacobiTriple h = jt(2.0 * x + kI * ctx.Kprime, m);
        return {checked_div(t.cn * t.dn, t.sn, "sn x"), kI * (std::sqrt(m) * h.cn + h.dn)};
    }
    const JacobiTriple d = jt(2.0 * x, m);
    switch (id) {
        case RatioId::cd_s:
            return {checked_div(t.cn * t.dn, t.sn, "sn x"), checked_div(d.dn + d.cn, d.sn, "sn 2x")};
        case RatioId::sd_c:
            return {checked_div(t.sn * t.dn, t.cn, "cn x"), checked_div(1.0 - d.cn, d.sn, "sn 2x")};
        case RatioId::sc_d:
            return {checked_div(t.sn * t.cn, t.dn, "dn x"), checked_div(1.0 - d.dn, m * d.sn, "m sn 2x")};
        case RatioId::c_sd:
            return {checked_div(t.cn, t.sn * t.dn, "sn x dn x"), checked_div(1.0 + d.cn, d.sn, "sn 2x")};
        case RatioId::s_cd:
            return {checked_div(t.sn, t.cn * t.dn, "cn x dn x"),
                    checked_div(d.dn - d.cn, (1.0 - m) * d.sn, "(1-m) sn 2x")};
        case RatioId::d_sc:
            return {checked_div(t.dn, t.sn * t.cn, "sn x cn x"), checked_div(1.0 + d.dn, d.sn, "sn 2x")};
        case RatioId::cd_s_pole: break;
    }
    return {};
}

CompositeRatio composite_ratio_p3(cplx x, double m) {
    const ModulusContext ctx = make_context(m);
    auto ratio = [m](cplx z) {
        const JacobiTriple t = jt(z, m);
        return checked_div(t.cn * t.dn, t.sn, "sn x");
    };
    const double h = 2.0 * ctx.K / 3.0;
    const cplx r0 = ratio(x), r1 = ratio(x + h), r2 = ratio(x + 2.0 * h);
    CompositeRatio out;
    out.lhs = r1 * r2 + r2 * r0 + r0 * r1;
    const cplx u2 = 2.0 * (x + kI * (ctx.Kprime / 2.0));
    const JacobiTriple a = jt(u2, m), b = jt(u2 + 2.0 * h, m), c = jt(u2 + 4.0 * h, m);
    out.middle = -m * (a.cn * b.cn + b.cn * c.cn + c.cn * a.cn) - (a.dn * b.dn + b.dn * c.dn + c.dn * a.dn);
    const double q = sncndn_real(h, m).dn;
    out.constant = q * (2.0 + q) * (m - (1.0 + q) * (1.0 + q)) / ((1.0 + q) * (1.0 + q));
    return out;
}

TransformedIdentity ratio_transform(RatioId id, double m) {
    return {TransformKind::ratio_expand, std::string(to_string(id)),
            [id, m](cplx x) { return ratio_expand(id, x, m); }};
}

TransformedIdentity composite_ratio_transform(double m) {
    return {TransformKind::ratio_expand, "cyclic cn dn/sn products, p = 3", [m](cplx x) {
                const CompositeRatio c = composite_ratio_p3(x, m);
                return SidePair{c.lhs, c.constant};
            }};
}

// ---------------------------------------------------------------------------
// Weierstrass and theta forms.

WeierstrassConstants weierstrass_constants(const IdentitySpec& spec, double m, int p) {
    const bool shape = spec.lhs.size() == 1 && spec.lhs[0].term.kind == TermKind::sum &&
                       spec.lhs[0].term.pattern == SignPattern::uniform &&
                       spec.lhs[0].term.factors.size() == 2 && spec.lhs[0].term.factors[0].fn == FnKind::dn &&
                       spec.lhs[0].term.factors[0].power == 2 && spec.lhs[0].term.factors[1].fn == FnKind::dn &&
                       spec.lhs[0].term.factors[1].power == 2 && spec.rhs.size() == 2;
    if (!shape) throw SemanticError("weierstrass_form: " + spec.id + " is not the dn^2 dn^2 identity");
    const PreparedIdentity prep = prepare_identity(spec, make_direct_view(m), ShiftParams{p, 1, 0, 0});
    WeierstrassConstants c;
    c.m = m;
    c.p = p;
    for (std::size_t i = 0; i < spec.rhs.size(); ++i) {
        const Basis& b = spec.rhs[i].basis;
        if (b.kind == Basis::Kind::constant) {
            c.B = prep.rhs_coeffs[i];
        } else if (b.kind == Basis::Kind::monomial && b.s == 0 && b.c == 0 && b.d == 2) {
            c.A = prep.rhs_coeffs[i];
        } else {
            throw SemanticError("weierstrass_form: unexpected basis " + b.tag());
        }
    }
    return c;
}

SidePair weierstrass_sides(cplx u, const WeierstrassConstants& c) {
    const ModulusContext ctx = make_context(c.m);
    const double e1 = weierstrass_roots(c.m).e1;
    const double step = 2.0 * ctx.K / c.p;
    std::vector<cplx> P(c.p + 1);
    for (int j = 0; j <= c.p; ++j) P[j] = weierstrass_P(u + static_cast<double>(j) * step, ctx);
    cplx prod = 0.0, sum = 0.0;
    for (int j = 0; j < c.p; ++j) {
        prod += P[j] * P[j + 1];
        sum += P[j];
    }
    const double p = c.p;
    return {prod, (c.B + p * c.A * e1 - p * e1 * e1) - (c.A - 2.0 * e1) * sum};
}

TransformedIdentity weierstrass_form(const IdentitySpec& spec, double m, int p) {
    const WeierstrassConstants c = weierstrass_constants(spec, m, p);
    return {TransformKind::weierstrass_form, spec.id + " [Weierstrass form]",
            [c](cplx u) { return weierstrass_sides(u, c); }};
}

double theta_constant(double m, int p) {
    const ModulusContext ctx = make_context(m);
    double c = 1.0;
    for (int n = 1; n <= (p - 1) / 2; ++n) {
        const double z = n * std::numbers::pi / p;
        const double r = (theta(2, z, ctx) / theta(1, z, ctx)).real();
        c *= r * r;
    }
    return c;
}

TransformedIdentity theta_form(const IdentitySpec& spec, double m, int p) {
    if (p % 2 == 0) throw ConstraintError("theta_form needs odd p");
    const bool shape = spec.lhs.size() == 1 && spec.lhs[0].term.kind == TermKind::product &&
                       spec.lhs[0].term.factors.size() == 1 && spec.lhs[0].term.factors[0].fn == FnKind::dn &&
                       spec.lhs[0].term.factors[0].power == 1 && spec.rhs.size() == 1 &&
                       spec.rhs[0].basis == Basis{Basis::Kind::monomial, 0, 0, 1};
    if (!shape) throw SemanticError("theta_form: " + spec.id + " is not the dn-product identity");
    const PreparedIdentity prep = prepare_identity(spec, make_direct_view(m), ShiftParams{p, 1, 0, 0});
    const cplx C = prep.rhs_coeffs[0] * std::pow(1.0 - m, -(p - 1) / 4.0);
    const ModulusContext ctx = make_context(m);
    return {TransformKind::theta_form, spec.id + " [theta form]", [C, ctx, p](cplx z) {
                cplx prod = 1.0, sum = 0.0;
                for (int j = 0; j < p; ++j) {
                    const cplx zj = z + j * std::numbers::pi / p;
                    const cplx t4 = theta(4, zj, ctx);
                    if (std::abs(t4) < kDefaultPoleEps) throw PoleError("theta_form: theta4 vanishes", zj);
                    const cplx ratio = theta(3, zj, ctx) / t4;
                    prod *= ratio;
                    sum += ratio;
                }
                return SidePair{prod, C * sum};
            }};
}

// ---------------------------------------------------------------------------

TransformCheck check_transform(const TransformedIdentity& t, const std::vector<cplx>& points) {
    TransformCheck out;
    out.name = t.name;
    for (const cplx& u : points) {
        try {
            const SidePair s = t.eval(u);
            out.max_rel = std::max(out.max_rel, relative_residual(s.lhs, s.rhs));
            ++out.points;
        } catch (const PoleError&) {
            ++out.skipped;
        } catch (const DivisionByZeroError&) {
            ++out.skipped;
        }
    }
    return out;
}

std::vector<cplx> transform_points(std::uint64_t seed, std::size_t n, double m) {
    const ModulusContext ctx = make_context(m);
    std::mt19937_64 rng(seed);
    std::vector<cplx> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double re = 2.0 * ctx.K * unit_uniform(rng);
        const double im = (unit_uniform(rng) - 0.5) * ctx.Kprime;
        out.emplace_back(re, im);
    }
    return out;
}

}  // namespace ellcyc
