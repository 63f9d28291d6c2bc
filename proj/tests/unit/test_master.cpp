#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ellcyc/corpus.hpp"
#include "ellcyc/jacobi.hpp"
#include "ellcyc/master.hpp"
#include "oracles.hpp"

using namespace ellcyc;
using std::numbers::pi;

namespace {

const cplx I(0.0, 1.0);

struct Jac {
    double m;
    cplx sn(cplx z) const { return sncndn_complex(z, m).sn; }
    cplx cn(cplx z) const { return sncndn_complex(z, m).cn; }
    cplx dn(cplx z) const { return sncndn_complex(z, m).dn; }
    cplx cs(cplx z) const { return cn(z) / sn(z); }
    cplx ds(cplx z) const { return dn(z) / sn(z); }
    cplx ns(cplx z) const { return 1.0 / sn(z); }
};

double abs_err(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("dn has a single simple pole with residue -i") {
    const ModulusContext c = make_context(0.5);
    const Jac J{0.5};
    const GammaSet g = gamma_set([&](cplx z) { return J.dn(z); }, 3, PeriodKind::TwoK, GammaVariant::ordinary, c, 3);
    CHECK(g.order() == 1);
    CHECK(abs_err(g.gamma(1), -I) < 1e-12);
    // the alternating variant of a single pole at w = 0 is the same
    const GammaSet a = gamma_set([&](cplx z) { return J.dn(z); }, 4, PeriodKind::TwoK, GammaVariant::alternating, c, 3);
    const GammaSet o = gamma_set([&](cplx z) { return J.dn(z); }, 4, PeriodKind::TwoK, GammaVariant::ordinary, c, 3);
    CHECK(abs_err(a.gamma(1), o.gamma(1)) < 1e-13);
}

TEST_CASE("alternating gammas weight pole w by (-1)^w") {
    const double m = 0.4;
    const ModulusContext c = make_context(m);
    const Jac J{m};
    const int p = 6;
    const double a = 2 * c.K / p;
    auto f = [&](cplx z) { return J.dn(z) * J.dn(z) * (J.dn(z + a) + J.dn(z - a)); };
    const GammaSet o = gamma_set(f, p, PeriodKind::TwoK, GammaVariant::ordinary, c, 3);
    const GammaSet alt = gamma_set(f, p, PeriodKind::TwoK, GammaVariant::alternating, c, 3);
    REQUIRE(o.poles.size() == static_cast<std::size_t>(p));
    for (int l = 1; l <= 3; ++l) {
        cplx want = 0.0;
        for (int w = 0; w < p; ++w) want += (w % 2 ? -1.0 : 1.0) * o.poles[w].alpha(l);
        CHECK(abs_err(alt.gamma(l), want) < 1e-12);
    }
    CHECK_THROWS_AS(gamma_set(f, 5, PeriodKind::TwoK, GammaVariant::alternating, c, 3), ConstraintError);
}

TEST_CASE("contour radius independence") {
    const double m = 0.7;
    const ModulusContext c = make_context(m);
    const Jac J{m};
    const int p = 4;
    auto f = [&](cplx z) { return J.dn(z) * J.dn(z) * J.dn(z + 2 * c.K / p) * J.dn(z + 2 * c.K / p); };
    const double rho = default_radius(c, p);
    const double dist = 2 * c.K / p;
    const PoleData a = extract_alphas(f, cplx(0, c.Kprime), 4, rho, dist);
    const PoleData b = extract_alphas(f, cplx(0, c.Kprime), 4, rho / 2, dist);
    for (int l = 1; l <= 4; ++l) CHECK(abs_err(a.alpha(l), b.alpha(l)) < 1e-9);
    CHECK_THROWS_AS(extract_alphas(f, cplx(0, c.Kprime), 4, dist / 2, dist), DomainError);
}

TEST_CASE("gamma closed forms") {
    for (double m : {0.3, 0.7}) {
        const ModulusContext c = make_context(m);
        const Jac J{m};
        for (int p : {3, 4, 5}) {
            const double a = 2 * c.K / p;
            // sn cn dn [dn(+1) + dn(-1)]
            {
                auto f = [&](cplx z) { return J.sn(z) * J.cn(z) * J.dn(z) * (J.dn(z + a) + J.dn(z - a)); };
                const GammaSet g = gamma_set(f, p, PeriodKind::TwoK, GammaVariant::ordinary, c, 4);
                CHECK(abs_err(g.gamma(1), 0.0) < 1e-9);
                CHECK(abs_err(g.gamma(2), -2.0 * I / m * J.ds(a) * J.ns(a)) < 1e-9);
            }
            // dn^2 dn^2(+1)
            {
                auto f = [&](cplx z) { return J.dn(z) * J.dn(z) * J.dn(z + a) * J.dn(z + a); };
                const GammaSet g = gamma_set(f, p, PeriodKind::TwoK, GammaVariant::ordinary, c, 4);
                CHECK(abs_err(g.gamma(1), 0.0) < 1e-9);
                CHECK(abs_err(g.gamma(2), 2.0 * J.cs(a) * J.cs(a)) < 1e-9);
            }
            // cn sn [dn^3(+1) + dn^3(-1)]
            {
                auto f = [&](cplx z) {
                    const cplx u = J.dn(z + a), v = J.dn(z - a);
                    return J.cn(z) * J.sn(z) * (u * u * u + v * v * v);
                };
                const GammaSet g = gamma_set(f, p, PeriodKind::TwoK, GammaVariant::ordinary, c, 5);
                CHECK(abs_err(g.gamma(2), 0.0) < 1e-9);
                CHECK(abs_err(g.gamma(3), 2.0 / m * J.ds(a) * J.ns(a)) < 1e-9);
            }
        }
        // alternating bracket for dn^2 [dn(+r) + dn(-r)], p even, r odd
        for (int p : {4, 6}) {
            for (int r = 1; r < p; r += 2) {
                if (std::gcd(r, p) != 1) continue;
                const double a = 2 * c.K * r / p;
                auto f = [&](cplx z) { return J.dn(z) * J.dn(z) * (J.dn(z + a) + J.dn(z - a)); };
                const GammaSet g = gamma_set(f, p, PeriodKind::TwoK, GammaVariant::alternating, c, 3);
                const double sign = r % 2 ? -1.0 : 1.0;
                const cplx bracket = 2.0 * (J.ds(a) * J.ns(a) - sign * J.cs(a) * J.cs(a));
                // S^A = i gamma~_1 sigma1A: the bracket is i gamma~_1
                CHECK(abs_err(I * g.gamma(1), bracket) < 1e-9);
                CHECK(abs_err(g.gamma(2), 0.0) < 1e-9);
            }
        }
    }
}

TEST_CASE("archetypal series against direct sums") {
    SUBCASE("sigma2 at p = 1 is dn^2") {
        const ModulusContext c = make_context(0.5);
        const double dn = oracle::jacobi(0.4, 0.5).dn;
        CHECK(abs_err(archetypal(ArchetypalKind::sigma2, 0.4, c, 1), dn * dn) < 1e-10);
    }
    for (double m : {0.3, 0.8}) {
        const ModulusContext c = make_context(m);
        const double K = oracle::K(m);
        for (int p : {2, 3, 4, 6}) {
            for (double x0 : {0.13, 0.9}) {
                double s1 = 0, s2 = 0, s3 = 0, s4 = 0, a1 = 0, a2 = 0;
                for (int j = 0; j < p; ++j) {
                    const auto v = oracle::jacobi(x0 + 2 * K * j / p, m);
                    const auto w = oracle::jacobi(x0 + 4 * K * j / p, m);
                    const double sg = j % 2 ? -1.0 : 1.0;
                    s1 += v.dn;
                    s2 += v.dn * v.dn;
                    s3 += w.sn;
                    s4 += w.cn;
                    a1 += sg * v.dn;
                    a2 += sg * jacobi_zeta_u(x0 + 2 * K * j / p, c);
                }
                CHECK(abs_err(archetypal(ArchetypalKind::sigma1, x0, c, p), s1) < 1e-10);
                CHECK(abs_err(archetypal(ArchetypalKind::sigma2, x0, c, p), s2) < 1e-10);
                CHECK(abs_err(archetypal(ArchetypalKind::sigma3, x0, c, p), s3) < 1e-10);
                CHECK(abs_err(archetypal(ArchetypalKind::sigma4, x0, c, p), s4) < 1e-10);
                if (p % 2 == 0) {
                    CHECK(abs_err(archetypal(ArchetypalKind::sigma1A, x0, c, p), a1) < 1e-10);
                    CHECK(abs_err(archetypal(ArchetypalKind::sigma2A, x0, c, p), a2) < 1e-10);
                }
            }
        }
    }
    const ModulusContext c = make_context(0.5);
    CHECK_THROWS_AS(archetypal(ArchetypalKind::sigma1A, 0.2, c, 3), ConstraintError);
    CHECK(period_of(ArchetypalKind::sigma3) == PeriodKind::FourK);
    CHECK(period_of(ArchetypalKind::sigma2A) == PeriodKind::TwoK);
}

TEST_CASE("archetypal derivatives by finite differences") {
    const ModulusContext c = make_context(0.45);
    const double h = 1e-4;
    for (ArchetypalKind k : {ArchetypalKind::sigma1, ArchetypalKind::sigma2, ArchetypalKind::sigma3,
                             ArchetypalKind::sigma4, ArchetypalKind::sigma1A, ArchetypalKind::sigma2A}) {
        const int p = 4;
        const cplx x0(0.37, 0.05);
        for (int n = 0; n < 3; ++n) {
            const cplx fd = (archetypal_derivative(k, n, x0 + h, c, p) - archetypal_derivative(k, n, x0 - h, c, p)) /
                            (2 * h);
            CHECK_MESSAGE(abs_err(fd, archetypal_derivative(k, n + 1, x0, c, p)) <
                              1e-6 * std::max(1.0, std::abs(fd)),
                          to_string(k), " n=", n);
        }
    }
}

TEST_CASE("Poisson cross-check and truncation") {
    const ModulusContext c = make_context(0.5);
    const Jac J{0.5};
    auto f = [&](cplx z) { return J.dn(z) * J.dn(z); };
    CHECK(poisson_check([&](cplx z) { return J.dn(z); }, 0.3, c, 3, PeriodKind::TwoK) < 1e-9);
    // with fewer Fourier modes than needed the error grows as k_max shrinks
    double prev = 0.0;
    for (int k : {16, 8, 4, 2}) {
        const double e = poisson_check(f, 0.3, c, 1, PeriodKind::TwoK, k);
        CHECK(e >= prev);
        prev = e;
    }
    CHECK(prev > 1e-6);
}

TEST_CASE("gamma_1 vanishes for MI-II and matches the zero mode for MI-I") {
    const ViewPtr view = make_direct_view(0.35);
    const ModulusContext c = make_context(0.35);
    int mi2 = 0, mi1 = 0;
    for (const auto& s : builtin_corpus().identities) {
        if (s.has_flag("erratum")) continue;
        if (s.family != Family::MI_II && s.family != Family::MI_I) continue;
        const auto rp = representative_params(s);
        if (!rp) continue;
        const ShiftParams sp = *rp;
        PreparedIdentity prep;
        try {
            prep = prepare_identity(s, view, sp);
        } catch (const ConstraintError&) {
            continue;
        }
        auto f = [&](cplx z) { return prep.lhs_summand(z); };
        const int L = max_pole_order(s, sp.p) + 1;
        if (s.family == Family::MI_II) {
            const GammaSet g = gamma_set(f, sp.p, s.period, GammaVariant::ordinary, c, L);
            CHECK_MESSAGE(std::abs(g.gamma(1)) < 1e-9, s.id);
            ++mi2;
        } else {
            CHECK_MESSAGE(zero_mode_gap(f, c, sp.p, L) < 1e-9, s.id);
            ++mi1;
        }
    }
    CHECK(mi2 > 20);
    CHECK(mi1 > 20);
}

TEST_CASE("predict matches the direct sum for every corpus entry") {
    int n = 0;
    for (double m : {0.3, 0.8}) {
        const ViewPtr view = make_direct_view(m);
        for (const auto& s : builtin_corpus().identities) {
            if (s.has_flag("erratum")) continue;
            const auto rp = representative_params(s);
            if (!rp) continue;
            const ShiftParams sp = *rp;
            PreparedIdentity prep;
            try {
                prep = prepare_identity(s, view, sp);
            } catch (const ConstraintError&) {
                continue;
            }
            const cplx x0(0.29, 0.04);
            const cplx lhs = eval_prepared(prep, x0).lhs;
            const cplx pred = predict_identity(prep, x0).value;
            CHECK_MESSAGE(relative_residual(lhs, pred) < 1e-9, s.id, " m=", m);
            ++n;
        }
    }
    CHECK(n > 300);
}

TEST_CASE("predict rejects a family that does not fit the parity") {
    IdentitySpec s = *builtin_corpus().find("T.dd1");
    s.family = Family::MI_I;
    const auto prep = prepare_identity(s, make_direct_view(0.5), {3, 1, 0, 0});
    CHECK_THROWS_AS(predict_identity(prep, 0.2), SemanticError);
}

TEST_CASE("odd-p MI-III and MI-IV sums vanish for even p") {
    const ViewPtr view = make_direct_view(0.6);
    const Jac J{0.6};
    const double K = complete_K(0.6);
    for (int p : {2, 4, 6}) {
        cplx s3 = 0.0, s4 = 0.0;
        for (int j = 0; j < p; ++j) {
            const cplx x = 0.3 + 4 * K * j / p;
            s3 += J.sn(x) * J.sn(x) * J.sn(x + 4 * K / p);
            s4 += J.cn(x) * J.dn(x + 4 * K / p);
        }
        CHECK(std::abs(s3) < 1e-10);
        CHECK(std::abs(s4) < 1e-10);
    }
}
