#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ellcyc/corpus.hpp"
#include "ellcyc/theta.hpp"
#include "ellcyc/transforms.hpp"
#include "oracles.hpp"

using namespace ellcyc;
using std::numbers::pi;

namespace {

const cplx I(0.0, 1.0);

bool uses_name(const IdentitySpec& s, std::initializer_list<const char*> names) {
    std::vector<std::string> vars, fns;
    auto scan = [&](const expr::NodePtr& e) {
        if (e) expr::collect_names(*e, vars, fns);
    };
    for (const auto& t : s.rhs) scan(t.coeff);
    for (const auto& d : s.definitions) scan(d.value);
    for (const char* n : names) {
        if (std::find(vars.begin(), vars.end(), n) != vars.end()) return true;
        if (std::find(fns.begin(), fns.end(), n) != fns.end()) return true;
    }
    for (const auto& t : s.rhs) {
        if (t.basis.kind == Basis::Kind::zeta) return true;
    }
    return false;
}

// Ten non-erratum corpus entries, seeded; complex shifts need entries
// without E, Z or INT.
std::vector<const IdentitySpec*> sample_entries(std::uint64_t seed, bool reciprocal) {
    std::vector<const IdentitySpec*> pool;
    for (const auto& s : builtin_corpus().identities) {
        if (s.has_flag("erratum")) continue;
        if (reciprocal && uses_name(s, {"E", "Ep", "Zu", "INT"})) continue;
        pool.push_back(&s);
    }
    std::mt19937_64 g(seed);
    std::shuffle(pool.begin(), pool.end(), g);
    pool.resize(10);
    return pool;
}

}  // namespace

TEST_CASE("worked shift statements from real-axis oracles") {
    for (double m : {0.25, 0.6}) {
        const double K = oracle::K(m), Kp = oracle::K(1 - m);
        for (double x : {0.3, 1.1, 2.4}) {
            for (double y : {-0.2, 0.15}) {
                const auto a = oracle::jacobi_complex(x, y, m);
                const auto b = oracle::jacobi_complex(x, y + Kp, m);
                CHECK(std::abs(a.sn * b.sn - 1 / std::sqrt(m)) < 1e-10);
                const auto c = oracle::jacobi_complex(x + K, y + Kp, m);
                CHECK(std::abs(a.cn * c.cn - (-I * std::sqrt(1 - m) / std::sqrt(m))) < 1e-10);
            }
        }
    }
}

TEST_CASE("worked shift examples and auxiliary products") {
    for (double m : {0.2, 0.5, 0.85}) {
        const auto pts = transform_points(11, 8, m);
        for (const auto& t : worked_shift_examples(m)) {
            const TransformCheck c = check_transform(t, pts);
            CHECK_MESSAGE(c.points >= 6, t.name);
            CHECK_MESSAGE(c.max_rel < 1e-9, t.name);
        }
        for (auto fn : {aux_product_nd, aux_product_cs, aux_product_sc}) {
            for (cplx x : {cplx(0.3, 0.0), cplx(0.8, 0.2), cplx(1.9, -0.3)}) {
                const SidePair s = fn(x, m);
                CHECK(std::abs(s.lhs - s.rhs) < 1e-12);
            }
        }
    }
}

TEST_CASE("double imaginary shift returns to the original modulus") {
    const double m = 0.3;
    const ViewPtr direct = make_direct_view(m);
    const auto once = std::make_shared<const ImaginaryShiftView>(direct);
    const auto twice = std::make_shared<const ImaginaryShiftView>(once);
    CHECK(std::abs(once->m() - 0.7) < 1e-15);
    CHECK(std::abs(twice->m() - m) < 1e-15);
    CHECK(std::abs(twice->K() - direct->K()) < 1e-15);
    CHECK(std::abs(twice->E() - direct->E()) < 1e-15);
    for (cplx z : {cplx(0.4, 0.0), cplx(1.2, 0.3)}) {
        const JacobiTriple a = twice->triple(z), b = direct->triple(z);
        CHECK(std::abs(a.sn - b.sn) < 1e-12);
        CHECK(std::abs(a.cn - b.cn) < 1e-12);
        CHECK(std::abs(a.dn - b.dn) < 1e-12);
    }
    // 1 - mu view against Boost at the complementary parameter
    for (double x : {0.2, 0.9}) {
        const auto o = oracle::jacobi(x, 1 - m);
        const JacobiTriple t = once->triple(x);
        CHECK(std::abs(t.sn - o.sn) < 1e-12);
        CHECK(std::abs(t.cn - o.cn) < 1e-12);
        CHECK(std::abs(t.dn - o.dn) < 1e-12);
    }
    // 1/mu view: sn(x | 1/mu) = sqrt(mu) sn(x/sqrt(mu) | mu)
    const ReciprocalModulusView rec(direct);
    const double x = 0.35;
    CHECK(std::abs(rec.triple(x).sn - std::sqrt(m) * oracle::jacobi(x / std::sqrt(m), m).sn) < 1e-12);
    CHECK_THROWS(rec.E());
}

TEST_CASE("ten corpus entries per shift transform") {
    const double m = 0.4;
    for (bool reciprocal : {false, true}) {
        for (const IdentitySpec* s : sample_entries(reciprocal ? 21 : 20, reciprocal)) {
            const auto sp = representative_params(*s);
            REQUIRE(sp);
            const TransformedIdentity t = reciprocal ? complex_shift(*s, m, *sp) : imaginary_shift(*s, m, *sp);
            const TransformCheck c = check_transform(t, transform_points(3, 8, m));
            CHECK_MESSAGE(c.points >= 6, t.name);
            CHECK_MESSAGE(c.max_rel < 1e-9, t.name);
        }
    }
}

TEST_CASE("ratio formulas") {
    for (double m : {0.3, 0.9}) {
        const auto pts = transform_points(5, 8, m);
        for (RatioId id : all_ratio_ids()) {
            const TransformCheck c = check_transform(ratio_transform(id, m), pts);
            CHECK_MESSAGE(c.max_rel < 1e-9, to_string(id));
        }
        CHECK(check_transform(composite_ratio_transform(m), pts).max_rel < 1e-9);
    }
    CHECK_THROWS_AS(ratio_expand(RatioId::cd_s, 0.0, 0.5), DivisionByZeroError);
}

TEST_CASE("ratio formulas reduce to half-angle identities as m -> 0") {
    const double m = 1e-10;
    for (double x : {0.3, 0.7, 1.2}) {
        const double c = std::cos(x), s = std::sin(x), c2 = std::cos(2 * x), s2 = std::sin(2 * x);
        CHECK(std::abs(ratio_expand(RatioId::cd_s, x, m).rhs - (1 + c2) / s2) < 1e-8);
        CHECK(std::abs(ratio_expand(RatioId::cd_s, x, m).lhs - c / s) < 1e-8);
        CHECK(std::abs(ratio_expand(RatioId::sd_c, x, m).rhs - (1 - c2) / s2) < 1e-8);
        CHECK(std::abs(ratio_expand(RatioId::sd_c, x, m).lhs - s / c) < 1e-8);
        CHECK(std::abs(ratio_expand(RatioId::c_sd, x, m).rhs - c / s) < 1e-8);
        CHECK(std::abs(ratio_expand(RatioId::d_sc, x, m).rhs - 1 / (s * c)) < 1e-8);
    }
}

TEST_CASE("composite ratio constant from Boost values") {
    for (double m : {0.2, 0.6}) {
        const double K = oracle::K(m);
        const double q = oracle::jacobi(2 * K / 3, m).dn;
        for (double x : {0.3, 0.8}) {
            double g[3];
            for (int j = 0; j < 3; ++j) {
                const auto v = oracle::jacobi(x + 2 * K * j / 3, m);
                g[j] = v.cn * v.dn / v.sn;
            }
            const double lhs = g[0] * g[1] + g[1] * g[2] + g[2] * g[0];
            CHECK(lhs == doctest::Approx(q * (2 + q) * (m - (1 + q) * (1 + q)) / ((1 + q) * (1 + q))).epsilon(1e-12));
            const CompositeRatio c = composite_ratio_p3(x, m);
            CHECK(std::abs(c.lhs - lhs) < 1e-12);
            CHECK(std::abs(c.middle - c.constant) < 1e-12);
        }
    }
}

TEST_CASE("Weierstrass form of the dn^2 dn^2 identity") {
    const IdentitySpec& s = *builtin_corpus().find("T.d2d2");
    for (double m : {0.3, 0.7}) {
        for (int p : {3, 4, 5}) {
            const WeierstrassConstants wc = weierstrass_constants(s, m, p);
            const double a = 2 * oracle::K(m) / p;
            const auto v = oracle::jacobi(a, m);
            CHECK(std::abs(wc.A - (-2.0 * v.cn * v.cn / (v.sn * v.sn))) < 1e-12);
            const TransformCheck c = check_transform(weierstrass_form(s, m, p), transform_points(8, 8, m));
            CHECK(c.points >= 6);
            CHECK(c.max_rel < 1e-9);
        }
    }
    CHECK_THROWS_AS(weierstrass_constants(*builtin_corpus().find("T.dd1"), 0.5, 3), SemanticError);
}

TEST_CASE("theta3/theta4 is dn / (1-m)^(1/4)") {
    for (double m : {0.1, 0.5, 0.9}) {
        const ModulusContext c = make_context(m);
        for (cplx z : {cplx(0.2, 0.0), cplx(1.0, 0.3)}) {
            const cplx v = pi * z / (2 * c.K);
            const cplx ratio = theta(3, v, c) / theta(4, v, c);
            CHECK(std::abs(ratio - sncndn_complex(z, m).dn / std::pow(1 - m, 0.25)) < 1e-12);
        }
        for (int p : {3, 5, 7}) {
            double prod = 1.0;
            for (int n = 1; n <= (p - 1) / 2; ++n) {
                const auto t = oracle::jacobi(2 * n * c.K / p, m);
                prod *= t.cn * t.cn / (t.sn * t.sn);
            }
            CHECK(theta_constant(m, p) == doctest::Approx(std::pow(1 - m, -(p - 1) / 4.0) * prod).epsilon(1e-12));
        }
    }
}

TEST_CASE("theta form of the dn product") {
    const IdentitySpec& s = *builtin_corpus().find("A.MI1.L1.03");
    for (double m : {0.3, 0.7}) {
        for (int p : {3, 5}) {
            std::vector<cplx> zs;
            for (int i = 0; i < 8; ++i) zs.emplace_back(0.1 + 0.37 * i, 0.05 * (i % 3));
            const TransformCheck c = check_transform(theta_form(s, m, p), zs);
            CHECK(c.points == 8);
            CHECK(c.max_rel < 1e-9);
        }
    }
    CHECK_THROWS_AS(theta_form(s, 0.5, 4), ConstraintError);
}
