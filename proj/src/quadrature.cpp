#include "ellcyc/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

namespace ellcyc {

QuadratureResult integrate(const ComplexIntegrand& f, double a, double b, double abs_tol,
                           double rel_tol) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    double l1 = 0.0;
    const cplx value =
        gauss_kronrod<double, 31>::integrate(f, a, b, 15, rel_tol, &err, &l1);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw ConvergenceError("integrate: non-finite integrand value");
    }
    // The Kronrod estimate is measured against the L1 norm, so integrals that
    // cancel to ~0 still terminate.
    if (err > abs_tol && err > rel_tol * l1) {
        std::ostringstream msg;
        msg << "integrate: error estimate " << err << " exceeds tolerance " << abs_tol;
        throw ConvergenceError(msg.str());
    }
    return {value, err};
}

QuadratureResult integrate_segment(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                                   double abs_tol, double rel_tol) {
    const cplx d = b - a;
    auto g = [&](double t) { return f(a + t * d) * d; };
    return integrate(g, 0.0, 1.0, abs_tol, rel_tol);
}

}  // namespace ellcyc
