#pragma once

// Complete and incomplete elliptic integrals, the nome, the Jacobi amplitude
// and the Jacobi zeta function for a real parameter m in [0, 1).

namespace ellcyc {

/// Cached scalar data for one modulus parameter m in (0, 1).
/// Immutable after construction; safe to share across threads.
struct ModulusContext {
    double m = 0.0;
    double K = 0.0;       // K(m)
    double Kprime = 0.0;  // K(1 - m)
    double E = 0.0;       // E(m)
    double Eprime = 0.0;  // E(1 - m)
    double q = 0.0;       // nome exp(-pi K'/K)

    double mc() const noexcept { return 1.0 - m; }
};

/// Builds the context for 0 < m < 1. Throws DomainError otherwise.
ModulusContext make_context(double m);

/// K(m) for 0 <= m < 1 via the arithmetic-geometric mean.
double complete_K(double m);

/// E(m) for 0 <= m <= 1 via the arithmetic-geometric mean.
double complete_E(double m);

/// Carlson's symmetric integrals.
double carlson_RF(double x, double y, double z);
double carlson_RD(double x, double y, double z);

/// Incomplete integral of the first kind F(phi | m), any finite phi, 0 <= m < 1.
double incomplete_F(double phi, double m);

/// Incomplete integral of the second kind E(phi | m), any finite phi, 0 <= m <= 1.
double incomplete_E(double phi, double m);

/// Continuous Jacobi amplitude am(u | m) from the descending AGM ladder.
/// For m == 1 this is the Gudermannian gd(u).
double amplitude(double u, double m);

/// Jacobi zeta in argument form, Z(u) = E(am u | m) - (E/K) u.
/// 2K-periodic and odd; the amplitude used is the continuous one, so
/// Z(beta) at beta = arcsin sn(2rK/p) equals jacobi_zeta_u(2rK/p) for every r.
double jacobi_zeta_u(double u, const ModulusContext& ctx);

}  // namespace ellcyc
