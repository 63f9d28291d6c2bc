#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ellcyc/jacobi.hpp"
#include "ellcyc/theta.hpp"
#include "oracles.hpp"

using namespace ellcyc;
using oracle::cplx;

namespace {

double cdist(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("real sn cn dn against Boost") {
    for (double m : {0.05, 0.5, 0.95}) {
        for (double u : {-5.1, -0.4, 0.0, 0.8, 2.9, 13.0}) {
            const RealTriple t = sncndn_real(u, m);
            const auto o = oracle::jacobi(u, m);
            CHECK(std::abs(t.sn - o.sn) < 1e-14);
            CHECK(std::abs(t.cn - o.cn) < 1e-14);
            CHECK(std::abs(t.dn - o.dn) < 1e-14);
        }
    }
}

TEST_CASE("degenerate moduli") {
    for (double u : {-1.3, 0.2, 2.5}) {
        const RealTriple a = sncndn_real(u, 0.0);
        CHECK(a.sn == doctest::Approx(std::sin(u)).epsilon(1e-15));
        CHECK(a.cn == doctest::Approx(std::cos(u)).epsilon(1e-15));
        CHECK(a.dn == 1.0);
        const RealTriple b = sncndn_real(u, 1.0);
        CHECK(b.sn == doctest::Approx(std::tanh(u)).epsilon(1e-15));
        CHECK(b.cn == doctest::Approx(1 / std::cosh(u)).epsilon(1e-15));
        CHECK(b.dn == doctest::Approx(1 / std::cosh(u)).epsilon(1e-15));
        CHECK(std::abs(sncndn_real(u, 1e-12).sn - std::sin(u)) < 1e-6);
    }
}

TEST_CASE("quarter period values") {
    for (double m : {0.2, 0.7}) {
        const RealTriple t = sncndn_real(complete_K(m), m);
        CHECK(t.sn == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(t.cn) < 1e-15);
        CHECK(t.dn == doctest::Approx(std::sqrt(1 - m)).epsilon(1e-15));
    }
}

TEST_CASE("complex addition law on 200 random points") {
    for (int i = 0; i < 200; ++i) {
        const double m = oracle::uniform(0.02, 0.98);
        const double K = oracle::K(m), Kp = oracle::K(1 - m);
        const double x = oracle::uniform(-2 * K, 2 * K);
        const double y = oracle::uniform(-0.9 * Kp, 0.9 * Kp);
        const JacobiTriple t = sncndn_complex(cplx(x, y), m);
        const auto o = oracle::jacobi_complex(x, y, m);
        const double scale = std::max({1.0, std::abs(o.sn), std::abs(o.cn), std::abs(o.dn)});
        CHECK(cdist(t.sn, o.sn) < 1e-12 * scale);
        CHECK(cdist(t.cn, o.cn) < 1e-12 * scale);
        CHECK(cdist(t.dn, o.dn) < 1e-12 * scale);
    }
}

TEST_CASE("double periodicity signs") {
    const double m = 0.43;
    const double K = complete_K(m), Kp = complete_K(1 - m);
    const cplx z(0.37, 0.21);
    const JacobiTriple base = sncndn_complex(z, m);
    for (int a = -1; a <= 1; ++a) {
        for (int b = -1; b <= 1; ++b) {
            const JacobiTriple t = sncndn_complex(z + cplx(2 * a * K, 2 * b * Kp), m);
            // sn: (-1)^a, cn: (-1)^(a+b), dn: (-1)^b
            const double sa = a % 2 ? -1.0 : 1.0;
            const double sb = b % 2 ? -1.0 : 1.0;
            CHECK(cdist(t.sn, sa * base.sn) < 1e-12);
            CHECK(cdist(t.cn, sa * sb * base.cn) < 1e-12);
            CHECK(cdist(t.dn, sb * base.dn) < 1e-12);
        }
    }
}

TEST_CASE("derivatives by central differences") {
    const double h = 1e-5;
    for (double m : {0.3, 0.8}) {
        for (cplx z : {cplx(0.4, 0.0), cplx(1.1, 0.3), cplx(-0.7, -0.5)}) {
            const JacobiTriple t = sncndn_complex(z, m);
            const JacobiTriple up = sncndn_complex(z + h, m);
            const JacobiTriple dn = sncndn_complex(z - h, m);
            CHECK(cdist((up.sn - dn.sn) / (2 * h), t.cn * t.dn) < 1e-6);
            CHECK(cdist((up.cn - dn.cn) / (2 * h), -t.sn * t.dn) < 1e-6);
            CHECK(cdist((up.dn - dn.dn) / (2 * h), -m * t.sn * t.cn) < 1e-6);
        }
    }
}

TEST_CASE("poles and auxiliary functions") {
    const double m = 0.5;
    const double K = complete_K(m), Kp = complete_K(1 - m);
    CHECK_THROWS_AS(sncndn_complex(cplx(0.0, Kp), m), PoleError);
    CHECK_THROWS_AS(sncndn_complex(cplx(2 * K, 3 * Kp), m), PoleError);
    CHECK(cdist(nearest_pole(cplx(2.1 * K, 2.8 * Kp), m), cplx(2 * K, 3 * Kp)) < 1e-14);
    CHECK_THROWS_AS(aux(AuxCode::ns, 0.0, m), DivisionByZeroError);
    const cplx z(0.6, 0.2);
    const JacobiTriple t = sncndn_complex(z, m);
    CHECK(cdist(aux(AuxCode::cs, z, m), t.cn / t.sn) < 1e-14);
    CHECK(cdist(aux(AuxCode::nd, z, m), 1.0 / t.dn) < 1e-14);
    CHECK(parse_aux("dc") == AuxCode::dc);
    CHECK_FALSE(parse_aux("xx").has_value());
}

TEST_CASE("theta route and direct route for Z agree") {
    for (double m : {0.1, 0.5, 0.9}) {
        const ModulusContext c = make_context(m);
        for (int i = 0; i < 30; ++i) {
            const double u = oracle::uniform(-3 * c.K, 3 * c.K);
            const double direct = jacobi_zeta_u(u, c);
            const cplx th = jacobi_zeta_complex(u, c);
            CHECK(std::abs(th.imag()) < 1e-14);
            CHECK(std::abs(th.real() - direct) <= 1e-10 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("complex Z has derivative dn^2 - E/K") {
    const ModulusContext c = make_context(0.6);
    const double h = 1e-5;
    const cplx z(0.5, 0.4);
    const cplx fd = (jacobi_zeta_complex(z + h, c) - jacobi_zeta_complex(z - h, c)) / (2 * h);
    const cplx dn = sncndn_complex(z, c.m).dn;
    CHECK(cdist(fd, dn * dn - c.E / c.K) < 1e-6);
}

TEST_CASE("theta quotient gives sn") {
    const ModulusContext c = make_context(0.45);
    for (cplx z : {cplx(0.3, 0.0), cplx(1.0, 0.4)}) {
        const cplx v = std::numbers::pi * z / (2 * c.K);
        const cplx sn = theta(3, 0.0, c) / theta(2, 0.0, c) * theta(1, v, c) / theta(4, v, c);
        CHECK(cdist(sn, sncndn_complex(z, c.m).sn) < 1e-13);
    }
}

TEST_CASE("Weierstrass data") {
    for (double m : {0.2, 0.75}) {
        const ModulusContext c = make_context(m);
        const WeierstrassRoots e = weierstrass_roots(m);
        CHECK(std::abs(e.e1 + e.e2 + e.e3) < 1e-14);
        const cplx u(0.7, 0.3);
        const cplx sn = sncndn_complex(u, m).sn;
        CHECK(cdist(weierstrass_P(u, c) - e.e3, 1.0 / (sn * sn)) < 1e-12);
        CHECK(std::abs(weierstrass_P(cplx(c.K, 0), c) - e.e1) < 1e-12);
        CHECK(std::abs(weierstrass_P(cplx(0, c.Kprime), c) - e.e3) < 1e-12);
    }
}
