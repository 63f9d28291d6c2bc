#include "ellcyc/monomial.hpp"

namespace ellcyc {

namespace {

cplx ipow(cplx x, int n) {
    cplx r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

}  // namespace

JacobiPoly JacobiPoly::monomial(int s, int c, int d, double coeff) {
    JacobiPoly p;
    p.add({s, c, d}, coeff);
    return p;
}

void JacobiPoly::add(const MonoKey& key, double coeff) {
    if (coeff == 0.0) return;
    auto [it, inserted] = terms_.emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    }
}

JacobiPoly JacobiPoly::derivative(double m) const {
    JacobiPoly out;
    for (const auto& [k, v] : terms_) {
        const int a = k[0], b = k[1], c = k[2];
        if (a > 0) out.add({a - 1, b + 1, c + 1}, v * a);
        if (b > 0) out.add({a + 1, b - 1, c + 1}, -v * b);
        if (c > 0) out.add({a + 1, b + 1, c - 1}, -m * v * c);
    }
    return out;
}

JacobiPoly JacobiPoly::derivative(double m, int order) const {
    JacobiPoly p = *this;
    for (int i = 0; i < order; ++i) p = p.derivative(m);
    return p;
}

cplx JacobiPoly::evaluate(const JacobiTriple& t) const {
    cplx acc = 0.0;
    for (const auto& [k, v] : terms_) acc += v * ipow(t.sn, k[0]) * ipow(t.cn, k[1]) * ipow(t.dn, k[2]);
    return acc;
}

}  // namespace ellcyc
