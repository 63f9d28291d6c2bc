#pragma once

#include <functional>

#include "ellcyc/errors.hpp"

namespace ellcyc {

using ComplexIntegrand = std::function<cplx(double)>;

struct QuadratureResult {
    cplx value;
    double error_estimate;
};

/// Adaptive Gauss-Kronrod (31-point) integral of f over [a, b]. Throws
/// ConvergenceError when the error estimate stays above `abs_tol` and
/// `rel_tol * |value|` after the maximum subdivision depth.
QuadratureResult integrate(const ComplexIntegrand& f, double a, double b, double abs_tol = 1e-12,
                           double rel_tol = 1e-13);

/// Integral along the straight segment from a to b in the complex plane.
QuadratureResult integrate_segment(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                                   double abs_tol = 1e-12, double rel_tol = 1e-13);

}  // namespace ellcyc
