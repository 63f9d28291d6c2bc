#include "ellcyc/jacobi.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ellcyc/theta.hpp"

namespace ellcyc {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxAgmSteps = 64;

// Descending AGM ladder on |u| <= K/2 where all three functions are well
// conditioned.
RealTriple agm_core(double u, double m) {
    std::array<double, kMaxAgmSteps + 1> a{};
    std::array<double, kMaxAgmSteps + 1> c{};
    a[0] = 1.0;
    double b = std::sqrt(1.0 - m);
    c[0] = std::sqrt(m);
    int n = 0;
    while (std::abs(c[n]) > kEps * a[n] && n < kMaxAgmSteps) {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
    }
    if (n == 0) {
        const double s = std::sin(u);
        return {s, std::cos(u), std::sqrt(1.0 - m * s * s)};
    }
    double phi = std::ldexp(a[n] * u, n);
    double previous = phi;
    for (int k = n; k > 0; --k) {
        previous = phi;
        phi = 0.5 * (phi + std::asin(c[k] / a[k] * std::sin(phi)));
    }
    const double s = std::sin(phi);
    const double cphi = std::cos(phi);
    return {s, cphi, cphi / std::cos(previous - phi)};
}

}  // namespace

std::string_view to_string(AuxCode code) {
    switch (code) {
        case AuxCode::nd: return "nd";
        case AuxCode::cd: return "cd";
        case AuxCode::sd: return "sd";
        case AuxCode::ns: return "ns";
        case AuxCode::cs: return "cs";
        case AuxCode::ds: return "ds";
        case AuxCode::nc: return "nc";
        case AuxCode::dc: return "dc";
        case AuxCode::sc: return "sc";
    }
    return "?";
}

std::optional<AuxCode> parse_aux(std::string_view name) {
    static constexpr std::array<AuxCode, 9> all{AuxCode::nd, AuxCode::cd, AuxCode::sd,
                                                AuxCode::ns, AuxCode::cs, AuxCode::ds,
                                                AuxCode::nc, AuxCode::dc, AuxCode::sc};
    for (AuxCode c : all) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

RealTriple sncndn_real(double u, double m) {
    if (!(m >= 0.0 && m <= 1.0)) throw DomainError("sncndn_real: m must lie in [0, 1]");
    if (!std::isfinite(u)) throw DomainError("sncndn_real: u must be finite");
    if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
    if (m == 1.0) {
        const double sech = 1.0 / std::cosh(u);
        return {std::tanh(u), sech, sech};
    }
    const double K = complete_K(m);
    // Reduce to (-2K, 2K], then fold onto [-K, K] with sn(2K - u) = sn(u),
    // cn(2K - u) = -cn(u), dn(2K - u) = dn(u).
    double v = u - 4.0 * K * std::round(u / (4.0 * K));
    double cn_sign = 1.0;
    if (std::abs(v) > K) {
        v = std::copysign(2.0 * K, v) - v;
        cn_sign = -1.0;
    }
    const double sign = v < 0.0 ? -1.0 : 1.0;
    const double av = std::abs(v);
    if (av <= 0.5 * K) {
        const RealTriple t = agm_core(av, m);
        return {sign * t.sn, cn_sign * t.cn, t.dn};
    }
    // Near the quarter period: sn(K - d) = cd(d), cn(K - d) = k' sd(d), dn(K - d) = k' nd(d).
    const double kc = std::sqrt(1.0 - m);
    const RealTriple t = agm_core(K - av, m);
    return {sign * t.cn / t.dn, cn_sign * kc * t.sn / t.dn, kc / t.dn};
}

cplx nearest_pole(cplx z, double m) {
    const double K = complete_K(m);
    const double Kp = complete_K(1.0 - m);
    const double a = std::round(z.real() / (2.0 * K));
    const double b = std::round((z.imag() - Kp) / (2.0 * Kp));
    return {2.0 * a * K, Kp + 2.0 * b * Kp};
}

JacobiTriple sncndn_complex(cplx z, double m, double pole_eps) {
    if (!(m >= 0.0 && m <= 1.0)) throw DomainError("sncndn_complex: m must lie in [0, 1]");
    const double x = z.real();
    const double y = z.imag();
    if (y == 0.0) {
        const RealTriple t = sncndn_real(x, m);
        return {t.sn, t.cn, t.dn};
    }
    if (m > 0.0 && m < 1.0) {
        const cplx pole = nearest_pole(z, m);
        if (std::abs(z - pole) < pole_eps) {
            std::ostringstream msg;
            msg << "sncndn_complex: z = " << z << " lies within " << pole_eps << " of the pole "
                << pole;
            throw PoleError(msg.str(), pole);
        }
    }
    const RealTriple r = sncndn_real(x, m);
    const RealTriple i = sncndn_real(y, 1.0 - m);
    const double den = i.cn * i.cn + m * r.sn * r.sn * i.sn * i.sn;
    if (den == 0.0) {
        throw PoleError("sncndn_complex: evaluation at a pole", z);
    }
    return {cplx(r.sn * i.dn, r.cn * r.dn * i.sn * i.cn) / den,
            cplx(r.cn * i.cn, -r.sn * r.dn * i.sn * i.dn) / den,
            cplx(r.dn * i.cn * i.dn, -m * r.sn * r.cn * i.sn) / den};
}

cplx aux_from_triple(AuxCode code, const JacobiTriple& t, double pole_eps) {
    auto divide = [pole_eps, code](cplx num, cplx den, const char* den_name) {
        if (std::abs(den) < pole_eps) {
            throw DivisionByZeroError(std::string("aux ") + std::string(to_string(code)) +
                                      ": denominator " + den_name + " vanishes");
        }
        return num / den;
    };
    switch (code) {
        case AuxCode::nd: return divide(1.0, t.dn, "dn");
        case AuxCode::cd: return divide(t.cn, t.dn, "dn");
        case AuxCode::sd: return divide(t.sn, t.dn, "dn");
        case AuxCode::ns: return divide(1.0, t.sn, "sn");
        case AuxCode::cs: return divide(t.cn, t.sn, "sn");
        case AuxCode::ds: return divide(t.dn, t.sn, "sn");
        case AuxCode::nc: return divide(1.0, t.cn, "cn");
        case AuxCode::dc: return divide(t.dn, t.cn, "cn");
        case AuxCode::sc: return divide(t.sn, t.cn, "cn");
    }
    throw DomainError("aux: unknown code");
}

cplx aux(AuxCode code, cplx z, double m, double pole_eps) {
    return aux_from_triple(code, sncndn_complex(z, m, pole_eps), pole_eps);
}

cplx jacobi_zeta_complex(cplx z, const ModulusContext& ctx) {
    const double scale = std::numbers::pi / (2.0 * ctx.K);
    // reduce by the real period 2K so the theta series argument stays small
    const double shift = 2.0 * ctx.K * std::round(z.real() / (2.0 * ctx.K));
    const ThetaResult t4 = theta_with_derivative(4, (z - shift) * scale, ctx.q);
    if (std::abs(t4.value) < 1e-300) throw PoleError("jacobi_zeta_complex: pole of Z", z);
    return scale * t4.derivative / t4.value;
}

WeierstrassRoots weierstrass_roots(double m) {
    return {(2.0 - m) / 3.0, (2.0 * m - 1.0) / 3.0, -(1.0 + m) / 3.0};
}

cplx weierstrass_P(cplx u, const ModulusContext& ctx, double pole_eps) {
    const double K = ctx.K;
    const double Kp = ctx.Kprime;
    // Lattice of P: 2aK + 2biK' (zeros of sn).
    const cplx lattice(2.0 * K * std::round(u.real() / (2.0 * K)),
                       2.0 * Kp * std::round(u.imag() / (2.0 * Kp)));
    if (std::abs(u - lattice) < pole_eps) {
        throw PoleError("weierstrass_P: u lies on the period lattice", lattice);
    }
    const WeierstrassRoots e = weierstrass_roots(ctx.m);
    // ns(u) = sqrt(m) sn(u - iK') keeps the evaluation finite near the poles of sn.
    const cplx pole = nearest_pole(u, ctx.m);
    cplx ns;
    if (std::abs(u - pole) < 0.25 * std::min(K, Kp)) {
        ns = std::sqrt(ctx.m) * sncndn_complex(u - cplx(0.0, Kp), ctx.m, 0.0).sn;
    } else {
        ns = 1.0 / sncndn_complex(u, ctx.m, pole_eps).sn;
    }
    return e.e3 + ns * ns;
}

}  // namespace ellcyc
