#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ellcyc/corpus.hpp"
#include "ellcyc/cyclic.hpp"
#include "oracles.hpp"

using namespace ellcyc;
using std::numbers::pi;

namespace {

CyclicTerm term_of(const char* text, SignPattern pattern = SignPattern::uniform) {
    CyclicTerm t;
    t.pattern = pattern;
    t.factors = parse_factor_product(text);
    return t;
}

const IdentitySpec& corpus(const char* id) {
    const IdentitySpec* s = builtin_corpus().find(id);
    REQUIRE_MESSAGE(s != nullptr, id);
    return *s;
}

bool constant_rhs(const IdentitySpec& s) {
    for (const auto& t : s.rhs) {
        if (t.basis.kind != Basis::Kind::constant) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("two-point dn product is sqrt(1-m)") {
    const double m = 0.5;
    for (double x0 : {0.0, 0.3, 1.7}) {
        const cplx v = eval_cyclic_sum(term_of("dn[0]*dn[+1]"), x0, m, PeriodKind::TwoK, {2, 1, 0, 0});
        CHECK(std::abs(v - 2 * std::sqrt(0.5)) < 1e-14);
        if (x0 > 0.0) {
            const double K = oracle::K(m);
            CHECK(oracle::jacobi(x0, m).dn * oracle::jacobi(x0 + K, m).dn == doctest::Approx(std::sqrt(0.5)));
        }
    }
}

TEST_CASE("sn sn(+1) vanishes at p = 2") {
    const cplx v = eval_cyclic_sum(term_of("sn[0]*sn[+1]"), 0.4, 0.3, PeriodKind::TwoK, {2, 1, 0, 0});
    CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("alternating sums need even p") {
    CHECK_THROWS_AS(eval_cyclic_sum(term_of("dn[0]", SignPattern::alternating), 0.4, 0.3, PeriodKind::TwoK,
                                    {3, 1, 0, 0}),
                    ConstraintError);
}

TEST_CASE("direct sum against a hand-written loop") {
    const double m = 0.62, x0 = 0.21;
    const int p = 5, r = 2;
    const double K = oracle::K(m);
    double want = 0.0;
    for (int j = 0; j < p; ++j) {
        const double x = x0 + 2 * K * j / p;
        want += oracle::jacobi(x, m).cn * oracle::jacobi(x + 2 * K * r / p, m).dn;
    }
    const cplx got = eval_cyclic_sum(term_of("cn[0]*dn[+r]"), x0, m, PeriodKind::TwoK, {p, r, 0, 0});
    CHECK(std::abs(got - want) < 1e-14);
}

TEST_CASE("pole hits name the node") {
    const double m = 0.5;
    const double Kp = complete_K(1 - m);
    CHECK_THROWS_AS(eval_cyclic_sum(term_of("dn[0]"), cplx(0, Kp), m, PeriodKind::TwoK, {3, 1, 0, 0}), PoleError);
}

TEST_CASE("constraint violations are raised before evaluation") {
    const IdentitySpec& s = corpus("A.MI1.L1.03");  // odd p only
    CHECK_THROWS_AS(prepare_identity(s, make_direct_view(0.5), {4, 1, 0, 0}), ConstraintError);
    CHECK_THROWS_AS(check_constraints(corpus("A.MI2.L0.01"), {4, 2, 0, 0}), ConstraintError);
}

TEST_CASE("full dn product for even p is (1-m)^(p/4) at every base point") {
    const IdentitySpec& s = corpus("A.MI2.L0.05");
    for (int p : {2, 4, 6}) {
        for (double m : {0.2, 0.5, 0.8}) {
            const auto prep = prepare_identity(s, make_direct_view(m), {p, 1, 0, 0});
            for (double x0 : {0.05, 0.6, 1.3, 2.2}) {
                const SidePair v = eval_prepared(prep, x0);
                CHECK(std::abs(v.lhs - std::pow(1 - m, p / 4.0)) < 1e-14);
                CHECK(std::abs(v.rhs - std::pow(1 - m, p / 4.0)) < 1e-15);
            }
        }
    }
}

TEST_CASE("zero right-hand side sums cancel to rounding") {
    const IdentitySpec& s = corpus("A.MI2.L0.08");
    for (int p : {3, 4, 7}) {
        const auto prep = prepare_identity(s, make_direct_view(0.45), {p, 1, 0, 0});
        for (cplx x0 : {cplx(0.2, 0), cplx(0.9, 0.1), cplx(1.4, -0.2)}) {
            CHECK(std::abs(eval_prepared(prep, x0).lhs) < 1e-13);
        }
    }
}

TEST_CASE("base-point invariance of constant identities over 32 points") {
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> re(0.0, 3.0), im(-0.2, 0.2);
    int checked = 0;
    for (const auto& s : builtin_corpus().identities) {
        if (!constant_rhs(s) || s.has_flag("erratum")) continue;
        const auto rp = representative_params(s);
        if (!rp) continue;
        const ShiftParams sp = *rp;
        PreparedIdentity prep;
        try {
            prep = prepare_identity(s, make_direct_view(0.37), sp);
        } catch (const ConstraintError&) {
            continue;
        }
        std::vector<cplx> v;
        while (v.size() < 32) {
            try {
                v.push_back(eval_prepared(prep, cplx(re(g), im(g))).lhs);
            } catch (const PoleError&) {
            } catch (const DivisionByZeroError&) {
            }
        }
        cplx mean = 0.0;
        for (cplx x : v) mean += x;
        mean /= 32.0;
        double var = 0.0;
        for (cplx x : v) var += std::norm(x - mean);
        const double sd = std::sqrt(var / 31.0);
        CHECK_MESSAGE(sd < 1e-9 * (1 + std::abs(mean)), s.id);
        ++checked;
    }
    CHECK(checked >= 10);
}

TEST_CASE("shift invariance: uniform sums repeat, alternating sums flip") {
    const double m = 0.55;
    const auto view = make_direct_view(m);
    for (const auto& s : builtin_corpus().identities) {
        if (s.has_flag("erratum")) continue;
        const auto rp = representative_params(s);
        if (!rp) continue;
        const ShiftParams sp = *rp;
        const cplx T = period_length(s.period, *view);
        const cplx x0(0.31, 0.07);
        for (const auto& t : s.lhs) {
            if (t.term.kind != TermKind::sum) continue;
            const cplx a = eval_cyclic_sum(t.term, x0, *view, s.period, sp);
            const cplx b = eval_cyclic_sum(t.term, x0 + T / static_cast<double>(sp.p), *view, s.period, sp);
            const double sign = t.term.pattern == SignPattern::alternating ? -1.0 : 1.0;
            CHECK_MESSAGE(std::abs(b - sign * a) <= 1e-10 * std::max(1.0, std::abs(a)), s.id);
        }
    }
}

TEST_CASE("m -> 0 limits of the simplest entries") {
    const double m = 1e-8;
    const auto view = make_direct_view(m);
    for (int p : {3, 4, 6}) {
        const double x0 = 0.23;
        // sum dn dn(+1) -> p
        auto dd = eval_identity(corpus("T.dd1"), x0, view, {p, 1, 0, 0});
        CHECK(std::abs(dd.lhs - double(p)) < 1e-6);
        CHECK(std::abs(dd.rhs - double(p)) < 1e-6);
        // sum sn sn(+1) -> (p/2) cos(pi/p)
        auto ss = eval_identity(corpus("T.ss1"), x0, view, {p, 1, 0, 0});
        CHECK(std::abs(ss.lhs - p / 2.0 * std::cos(pi / p)) < 1e-6);
        CHECK(std::abs(ss.rhs - p / 2.0 * std::cos(pi / p)) < 1e-6);
        // sum cn cn(+r) -> (p/2) cos(r pi/p)
        const int r = p == 6 ? 5 : 1;
        auto cc = eval_identity(corpus("A.MI2.L0.03"), x0, view, {p, r, 0, 0});
        CHECK(std::abs(cc.lhs - p / 2.0 * std::cos(r * pi / p)) < 1e-6);
        CHECK(std::abs(cc.rhs - p / 2.0 * std::cos(r * pi / p)) < 1e-6);
    }
}

TEST_CASE("INT token against a 10^6-panel Riemann sum") {
    struct Case {
        const char* id;
        ShiftParams sp;
    };
    for (const Case& c : {Case{"A.MI2.L2.01", {3, 1, 0, 0}}, Case{"A.MI2.L2.01", {4, 1, 0, 0}},
                          Case{"T.d2d2", {3, 1, 0, 0}}, Case{"T.dddd", {4, 1, 2, 3}}}) {
        const auto prep = prepare_identity(corpus(c.id), make_direct_view(0.5), c.sp);
        REQUIRE(prep.integral.has_value());
        const double T = 2 * oracle::K(0.5);
        const int N = 1000000;
        const double h = T / N;
        cplx acc = 0.0;
        for (int i = 0; i < N; ++i) acc += prep.lhs_summand((i + 0.5) * h);
        acc *= h;
        CHECK_MESSAGE(std::abs(acc - *prep.integral) <= 1e-8 * std::abs(acc), c.id);
    }
}

TEST_CASE("grid verification and reports") {
    const IdentitySpec& s = corpus("A.MI2.L0.01");
    SampleGrid grid = default_grid(99);
    grid.moduli = {0.3, 0.7};
    grid.p_values = {3, 4, 5};
    const VerificationReport serial = verify(s, grid, 1e-9, ExecPolicy::serial());
    const VerificationReport par = verify(s, grid, 1e-9, ExecPolicy::parallel(2));
    CHECK(serial.pass);
    CHECK(serial.samples.size() > 0);
    CHECK(serial.max_rel < 1e-9);
    CHECK(serial.median_rel <= serial.max_rel);
    REQUIRE(serial.samples.size() == par.samples.size());
    for (std::size_t i = 0; i < serial.samples.size(); ++i) {
        CHECK(serial.samples[i].rel_residual == par.samples[i].rel_residual);
        CHECK(serial.samples[i].x0 == par.samples[i].x0);
    }
    // p = 4 admits r = 1 and r = 3 only
    for (const auto& c : neighbor_choices(s, 4)) CHECK(std::gcd(c.r, 4) == 1);
    // same seed -> same points
    const SampleGrid a = default_grid(5), b = default_grid(5), c = default_grid(6);
    CHECK(a.base_points.size() == 16);
    bool same = true, differ = false;
    for (std::size_t i = 0; i < a.base_points.size(); ++i) {
        same = same && a.base_points[i].re == b.base_points[i].re && a.base_points[i].im_frac == b.base_points[i].im_frac;
        differ = differ || a.base_points[i].re != c.base_points[i].re;
    }
    CHECK(same);
    CHECK(differ);
}

TEST_CASE("relative residual") {
    CHECK(relative_residual(1.0, 1.0) == 0.0);
    CHECK(relative_residual(0.0, 1e-12) == doctest::Approx(1e-12));
    CHECK(relative_residual(100.0, 101.0) == doctest::Approx(1.0 / 101.0));
}

TEST_CASE("erratum entries fail and their corrections pass") {
    const CatalogFile& cat = builtin_corpus();
    const SampleGrid grid = default_grid(20240501, 4);
    int n = 0;
    for (const auto& s : cat.identities) {
        if (!s.has_flag("erratum")) continue;
        const IdentitySpec* fixed = cat.find(s.id + "a");
        REQUIRE(fixed != nullptr);
        CHECK_MESSAGE(!verify(s, grid, cat.tolerance).pass, s.id);
        CHECK_MESSAGE(verify(*fixed, grid, cat.tolerance).pass, fixed->id);
        ++n;
    }
    CHECK(n == 14);
}
