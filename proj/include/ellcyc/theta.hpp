#pragma once

#include "ellcyc/elliptic_core.hpp"
#include "ellcyc/errors.hpp"

namespace ellcyc {

struct ThetaResult {
    cplx value;
    cplx derivative;  // d/dz
};

/// Jacobi theta function theta_k(z | q), k in 1..4, from the nome series
///   theta1 = 2 sum (-1)^n q^{(n+1/2)^2} sin((2n+1)z)
///   theta2 = 2 sum q^{(n+1/2)^2} cos((2n+1)z)
///   theta3 = 1 + 2 sum q^{n^2} cos(2nz)
///   theta4 = 1 + 2 sum (-1)^n q^{n^2} cos(2nz)
/// Summation stops once the next term's bound q^{n^2} e^{2n|Im z|} is below
/// 1e-17 of the accumulated absolute mass. Throws ConvergenceError past
/// `max_terms`.
ThetaResult theta_with_derivative(int k, cplx z, double q, int max_terms = 400);

cplx theta(int k, cplx z, const ModulusContext& ctx);

}  // namespace ellcyc
