#pragma once

// Transformed restatements of cyclic identities: imaginary and complex
// shifts (via the substitution views), ratio formulas, the Weierstrass and
// theta-function forms. Each transform is an evaluator returning both sides
// at a point; nothing is rewritten symbolically.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ellcyc/cyclic.hpp"

namespace ellcyc {

enum class TransformKind { imaginary_shift, complex_shift, ratio_expand, weierstrass_form, theta_form };

std::string_view to_string(TransformKind kind);

using SideFn = std::function<SidePair(cplx u)>;

struct TransformedIdentity {
    TransformKind kind = TransformKind::imaginary_shift;
    std::string name;
    SideFn eval;
};

/// `spec` at the parameter 1 - mu of ImaginaryShiftView(inner), as a function
/// of the inner variable u = ix + K + iK'. With a direct inner view at m this
/// is the identity at modulus m with shifts i T'/p.
TransformedIdentity imaginary_shift(const IdentitySpec& spec, ViewPtr inner, const ShiftParams& sp);
TransformedIdentity imaginary_shift(const IdentitySpec& spec, double m, const ShiftParams& sp);

/// `spec` at 1/mu via ReciprocalModulusView(inner), as a function of
/// u = x / sqrt(mu): shifts in units of 2(K + iK')/p. Identities whose RHS
/// needs E, Z or INT raise DomainError/SemanticError when evaluated.
TransformedIdentity complex_shift(const IdentitySpec& spec, ViewPtr inner, const ShiftParams& sp);
TransformedIdentity complex_shift(const IdentitySpec& spec, double m, const ShiftParams& sp);

// The worked statements, evaluated directly at modulus m.
SidePair sn_sn_imaginary(cplx u, double m);      // sn(u) sn(u+iK') = 1/sqrt(m)
SidePair cn_cn_complex(cplx u, double m);        // cn(u) cn(u+K+iK') = -i sqrt(1-m)/sqrt(m)
SidePair dn_product3_imaginary(cplx u, double m);  // p = 3, q' = dn(2K'/3 | 1-m)
SidePair dsn_cyclic3_complex(cplx u, double m);  // p = 3, r = cn(2(K+iK')/3)

/// nd nd(+K), cs cs(+K), sc sc(+K) against their constants.
SidePair aux_product_nd(cplx x, double m);
SidePair aux_product_cs(cplx x, double m);
SidePair aux_product_sc(cplx x, double m);

std::vector<TransformedIdentity> worked_shift_examples(double m);

enum class RatioId {
    cd_s,       // cn dn / sn = (dn 2x + cn 2x) / sn 2x
    cd_s_pole,  // cn dn / sn = i [sqrt(m) cn(2x+iK') + dn(2x+iK')]
    sd_c,       // sn dn / cn = (1 - cn 2x) / sn 2x
    sc_d,       // sn cn / dn = (1 - dn 2x) / (m sn 2x)
    c_sd,       // cn / (sn dn) = (1 + cn 2x) / sn 2x
    s_cd,       // sn / (cn dn) = (dn 2x - cn 2x) / ((1-m) sn 2x)
    d_sc,       // dn / (sn cn) = (1 + dn 2x) / sn 2x
};

std::string_view to_string(RatioId id);
const std::vector<RatioId>& all_ratio_ids();

/// Both sides of one half-argument ratio formula. DivisionByZeroError near a
/// zero of either denominator.
SidePair ratio_expand(RatioId id, cplx x, double m);

struct CompositeRatio {
    cplx lhs;       // pairwise products of cn dn / sn over x, x+2K/3, x+4K/3
    cplx middle;    // -m sum cn cn - sum dn dn at 2u, u = x + iK'/2
    double constant;  // q(2+q)[m-(1+q)^2]/(1+q)^2, q = dn(2K/3)
};
CompositeRatio composite_ratio_p3(cplx x, double m);

TransformedIdentity ratio_transform(RatioId id, double m);
TransformedIdentity composite_ratio_transform(double m);

/// A and B of sum dn^2 dn^2(+1) = A sum dn^2 + B, taken from the engine's
/// evaluation of `spec` (which must have that LHS and the bases d2 and 1).
struct WeierstrassConstants {
    double m = 0.0;
    int p = 0;
    cplx A;
    cplx B;
};
WeierstrassConstants weierstrass_constants(const IdentitySpec& spec, double m, int p);

/// sum P(u + 2(j-1)K/p) P(u + 2jK/p) against (B + pAe1 - pe1^2) - (A - 2e1) sum P.
SidePair weierstrass_sides(cplx u, const WeierstrassConstants& c);
TransformedIdentity weierstrass_form(const IdentitySpec& spec, double m, int p);

/// prod_n theta2^2/theta1^2 at z = n pi / p, n = 1..(p-1)/2.
double theta_constant(double m, int p);

/// prod_j theta3/theta4 (z + (j-1) pi/p) against C sum_j theta3/theta4, with C
/// the engine's coefficient of the dn-product identity `spec` divided by
/// (1-m)^{(p-1)/4}. Needs odd p; the evaluator argument is z.
TransformedIdentity theta_form(const IdentitySpec& spec, double m, int p);

struct TransformCheck {
    std::string name;
    std::size_t points = 0;
    std::size_t skipped = 0;  // pole hits
    double max_rel = 0.0;
};

TransformCheck check_transform(const TransformedIdentity& t, const std::vector<cplx>& points);

/// Points with real part in [0, 2K) and imaginary part in (-K'/2, K'/2),
/// from mt19937_64(seed).
std::vector<cplx> transform_points(std::uint64_t seed, std::size_t n, double m);

}  // namespace ellcyc
