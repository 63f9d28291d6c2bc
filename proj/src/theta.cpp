#include "ellcyc/theta.hpp"

#include <cmath>
#include <string>

namespace ellcyc {

ThetaResult theta_with_derivative(int k, cplx z, double q, int max_terms) {
    if (k < 1 || k > 4) throw DomainError("theta: index must be 1..4, got " + std::to_string(k));
    if (!(q >= 0.0 && q < 1.0)) throw DomainError("theta: nome must lie in [0, 1)");

    const double y = std::abs(z.imag());
    const double log_q = q > 0.0 ? std::log(q) : -1e300;
    cplx value = (k >= 3) ? cplx(1.0) : cplx(0.0);
    cplx deriv = 0.0;
    double mass = std::abs(value);

    for (int n = (k <= 2 ? 0 : 1); n < max_terms; ++n) {
        // half-integer exponents for theta1/theta2
        const double nu = (k <= 2) ? n + 0.5 : static_cast<double>(n);
        const double freq = 2.0 * nu;
        const double log_bound = nu * nu * log_q + freq * y;
        const double bound = std::exp(log_bound);
        const bool past_peak = freq * 1.0 > -2.0 * y / log_q || q == 0.0;
        if (past_peak && bound < 1e-17 * std::max(mass, 1e-300) && n > 1) {
            return {value, deriv};
        }
        const double weight = 2.0 * std::exp(nu * nu * log_q);
        const double sign = ((k == 1 || k == 4) && (n % 2 == 1)) ? -1.0 : 1.0;
        const cplx arg = freq * z;
        if (k == 1) {
            value += sign * weight * std::sin(arg);
            deriv += sign * weight * freq * std::cos(arg);
        } else {
            value += sign * weight * std::cos(arg);
            deriv -= sign * weight * freq * std::sin(arg);
        }
        mass += weight * std::exp(freq * y);
        if (q == 0.0) return {value, deriv};
    }
    throw ConvergenceError("theta: series did not converge within " + std::to_string(max_terms) +
                           " terms; |Im z| too large for the nome series");
}

cplx theta(int k, cplx z, const ModulusContext& ctx) {
    return theta_with_derivative(k, z, ctx.q).value;
}

}  // namespace ellcyc
