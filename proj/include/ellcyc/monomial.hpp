#pragma once

// Polynomials in sn, cn, dn with real coefficients, closed under d/du.

#include <array>
#include <map>

#include "ellcyc/jacobi.hpp"

namespace ellcyc {

using MonoKey = std::array<int, 3>;  // exponents of sn, cn, dn

class JacobiPoly {
public:
    JacobiPoly() = default;
    static JacobiPoly monomial(int s, int c, int d, double coeff = 1.0);

    /// d/du using sn' = cn dn, cn' = -sn dn, dn' = -m sn cn.
    JacobiPoly derivative(double m) const;
    JacobiPoly derivative(double m, int order) const;

    cplx evaluate(const JacobiTriple& t) const;

    const std::map<MonoKey, double>& terms() const { return terms_; }
    void add(const MonoKey& key, double coeff);

private:
    std::map<MonoKey, double> terms_;
};

}  // namespace ellcyc
