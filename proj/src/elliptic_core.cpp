#include "ellcyc/elliptic_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ellcyc/errors.hpp"

namespace ellcyc {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxAgmSteps = 64;

void require_parameter(double m, const char* who) {
    if (!(m >= 0.0 && m < 1.0)) {
        throw DomainError(std::string(who) + ": parameter m must lie in [0, 1), got " +
                          std::to_string(m));
    }
}

}  // namespace

double complete_K(double m) {
    require_parameter(m, "complete_K");
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    for (int i = 0; i < kMaxAgmSteps && std::abs(a - b) > kEps * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return kPi / (2.0 * a);
}

double complete_E(double m) {
    if (!(m >= 0.0 && m <= 1.0)) {
        throw DomainError("complete_E: parameter m must lie in [0, 1]");
    }
    if (m == 1.0) return 1.0;
    // E/K = 1 - sum_n 2^{n-1} c_n^2 with c_0^2 = m.
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    double c = std::sqrt(m);
    double weight = 0.5;
    double sum = weight * c * c;
    for (int i = 0; i < kMaxAgmSteps && std::abs(c) > kEps * a; ++i) {
        const double an = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = std::sqrt(a * b);
        a = an;
        weight *= 2.0;
        sum += weight * c * c;
    }
    return (kPi / (2.0 * a)) * (1.0 - sum);
}

ModulusContext make_context(double m) {
    if (!(m > 0.0 && m < 1.0)) {
        if (m >= 1.0) {
            throw DomainError("make_context: K(m) diverges as m -> 1; m must be < 1");
        }
        throw DomainError("make_context: m must lie strictly inside (0, 1)");
    }
    ModulusContext ctx;
    ctx.m = m;
    ctx.K = complete_K(m);
    ctx.Kprime = complete_K(1.0 - m);
    ctx.E = complete_E(m);
    ctx.Eprime = complete_E(1.0 - m);
    ctx.q = std::exp(-kPi * ctx.Kprime / ctx.K);
    return ctx;
}

double carlson_RF(double x, double y, double z) {
    if (x < 0 || y < 0 || z < 0 || (x + y == 0) || (x + z == 0) || (y + z == 0)) {
        throw DomainError("carlson_RF: invalid arguments");
    }
    for (int i = 0; i < 200; ++i) {
        const double mu = (x + y + z) / 3.0;
        const double dx = 1.0 - x / mu;
        const double dy = 1.0 - y / mu;
        const double dz = 1.0 - z / mu;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < 1e-4) {
            const double e2 = dx * dy - dz * dz;
            const double e3 = dx * dy * dz;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) /
                   std::sqrt(mu);
        }
        const double sx = std::sqrt(x);
        const double sy = std::sqrt(y);
        const double sz = std::sqrt(z);
        const double lambda = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
    }
    throw ConvergenceError("carlson_RF: duplication did not converge");
}

double carlson_RD(double x, double y, double z) {
    if (x < 0 || y < 0 || z <= 0 || x + y == 0) {
        throw DomainError("carlson_RD: invalid arguments");
    }
    double sum = 0.0;
    double scale = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mu = (x + y + 3.0 * z) / 5.0;
        const double dx = 1.0 - x / mu;
        const double dy = 1.0 - y / mu;
        const double dz = 1.0 - z / mu;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < 1e-4) {
            const double ea = dx * dy;
            const double eb = dz * dz;
            const double ec = ea - eb;
            const double ed = ea - 6.0 * eb;
            const double ee = ed + ec + ec;
            const double series = 1.0 + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee) +
                                  dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + dz * 3.0 / 26.0 * ea));
            return 3.0 * sum + scale * series / (mu * std::sqrt(mu));
        }
        const double sx = std::sqrt(x);
        const double sy = std::sqrt(y);
        const double sz = std::sqrt(z);
        const double lambda = sx * (sy + sz) + sy * sz;
        sum += scale / (sz * (z + lambda));
        scale *= 0.25;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
    }
    throw ConvergenceError("carlson_RD: duplication did not converge");
}

namespace {

// Principal-branch pieces on |phi| <= pi/2.
double F_principal(double phi, double m) {
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    return s * carlson_RF(c * c, 1.0 - m * s * s, 1.0);
}

double E_principal(double phi, double m) {
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    const double y = 1.0 - m * s * s;
    if (m == 0.0) return phi;
    return s * carlson_RF(c * c, y, 1.0) - (m / 3.0) * s * s * s * carlson_RD(c * c, y, 1.0);
}

}  // namespace

double incomplete_F(double phi, double m) {
    require_parameter(m, "incomplete_F");
    if (!std::isfinite(phi)) throw DomainError("incomplete_F: phi must be finite");
    const double n = std::round(phi / kPi);
    const double rest = phi - n * kPi;
    return (n != 0.0 ? 2.0 * n * complete_K(m) : 0.0) + F_principal(rest, m);
}

double incomplete_E(double phi, double m) {
    if (!(m >= 0.0 && m <= 1.0)) throw DomainError("incomplete_E: m must lie in [0, 1]");
    if (!std::isfinite(phi)) throw DomainError("incomplete_E: phi must be finite");
    const double n = std::round(phi / kPi);
    const double rest = phi - n * kPi;
    return (n != 0.0 ? 2.0 * n * complete_E(m) : 0.0) + E_principal(rest, m);
}

double amplitude(double u, double m) {
    if (!(m >= 0.0 && m <= 1.0)) throw DomainError("amplitude: m must lie in [0, 1]");
    if (m == 0.0) return u;
    if (m == 1.0) return 2.0 * std::atan(std::tanh(0.5 * u));
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
    double phi = std::ldexp(a[n] * u, n);
    for (int k = n; k > 0; --k) {
        phi = 0.5 * (phi + std::asin(c[k] / a[k] * std::sin(phi)));
    }
    return phi;
}

double jacobi_zeta_u(double u, const ModulusContext& ctx) {
    if (!std::isfinite(u)) throw DomainError("jacobi_zeta_u: u must be finite");
    const double period = 2.0 * ctx.K;
    const double reduced = u - period * std::round(u / period);
    return incomplete_E(amplitude(reduced, ctx.m), ctx.m) - (ctx.E / ctx.K) * reduced;
}

}  // namespace ellcyc
