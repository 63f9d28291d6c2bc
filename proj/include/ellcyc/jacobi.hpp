#pragma once

#include <complex>
#include <optional>
#include <string_view>

#include "ellcyc/elliptic_core.hpp"
#include "ellcyc/errors.hpp"

namespace ellcyc {

/// Default distance below which a point is treated as sitting on a pole.
inline constexpr double kDefaultPoleEps = 1e-9;

template <typename T>
struct Triple {
    T sn{};
    T cn{};
    T dn{};
};

using RealTriple = Triple<double>;
using JacobiTriple = Triple<cplx>;

/// The nine auxiliary ratios.
enum class AuxCode { nd, cd, sd, ns, cs, ds, nc, dc, sc };

std::string_view to_string(AuxCode code);
std::optional<AuxCode> parse_aux(std::string_view name);

/// sn, cn, dn at a real argument for 0 <= m <= 1 (m = 0 and m = 1 use the
/// trigonometric and hyperbolic limits).
RealTriple sncndn_real(double u, double m);

/// sn, cn, dn at a complex argument z = x + iy, built from real-argument
/// functions at m (for x) and 1 - m (for y). Throws PoleError when z lies
/// within pole_eps of iK' + 2aK + 2biK'.
JacobiTriple sncndn_complex(cplx z, double m, double pole_eps = kDefaultPoleEps);

/// Nearest point of the pole lattice iK' + 2aK + 2biK' for 0 < m < 1.
cplx nearest_pole(cplx z, double m);

/// Auxiliary function `code` at z. Throws DivisionByZeroError when the
/// denominator is within pole_eps of zero.
cplx aux(AuxCode code, cplx z, double m, double pole_eps = kDefaultPoleEps);
cplx aux_from_triple(AuxCode code, const JacobiTriple& t, double pole_eps = kDefaultPoleEps);

/// Jacobi zeta for complex argument, evaluated as (pi/2K) theta4'(v)/theta4(v)
/// with v = pi z / 2K, also on the real axis where it keeps full relative
/// accuracy for small Z. Agrees with jacobi_zeta_u there.
cplx jacobi_zeta_complex(cplx z, const ModulusContext& ctx);

/// Weierstrass P with half-periods omega1 = K and omega3 = iK', evaluated
/// through P(u) = e3 + 1/sn^2(u).
cplx weierstrass_P(cplx u, const ModulusContext& ctx, double pole_eps = kDefaultPoleEps);

struct WeierstrassRoots {
    double e1;
    double e2;
    double e3;
};
WeierstrassRoots weierstrass_roots(double m);

}  // namespace ellcyc
