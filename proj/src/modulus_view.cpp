#include "ellcyc/modulus_view.hpp"

#include <cmath>
#include <sstream>

namespace ellcyc {

DirectView::DirectView(double m, double pole_eps) : ctx_(make_context(m)), pole_eps_(pole_eps) {}

JacobiTriple DirectView::triple(cplx z) const { return sncndn_complex(z, ctx_.m, pole_eps_); }

cplx DirectView::zeta(cplx z) const { return jacobi_zeta_complex(z, ctx_); }

std::string DirectView::describe() const {
    std::ostringstream os;
    os << "direct(m=" << ctx_.m << ")";
    return os.str();
}

ImaginaryShiftView::ImaginaryShiftView(ViewPtr inner) : inner_(std::move(inner)) {}

cplx ImaginaryShiftView::to_inner(cplx x) const {
    return cplx(0.0, 1.0) * x + inner_->K() + cplx(0.0, 1.0) * inner_->Kprime();
}

cplx ImaginaryShiftView::from_inner(cplx u) const {
    return (u - inner_->K() - cplx(0.0, 1.0) * inner_->Kprime()) / cplx(0.0, 1.0);
}

JacobiTriple ImaginaryShiftView::triple(cplx z) const {
    const cplx mu = inner_->m();
    const cplx kc = std::sqrt(1.0 - mu);
    const JacobiTriple t = inner_->triple(to_inner(z));
    const cplx i(0.0, 1.0);
    return {-t.dn / kc, i * std::sqrt(mu) / kc * t.cn, std::sqrt(mu) * t.sn};
}

cplx ImaginaryShiftView::zeta(cplx z) const {
    // Z at the complementary parameter is evaluated directly there.
    const cplx mc = m();
    if (std::abs(mc.imag()) > 0.0) {
        throw DomainError("ImaginaryShiftView::zeta: complementary parameter is not real");
    }
    return jacobi_zeta_complex(z, make_context(mc.real()));
}

std::string ImaginaryShiftView::describe() const {
    return "imaginary_shift(" + inner_->describe() + ")";
}

ReciprocalModulusView::ReciprocalModulusView(ViewPtr inner)
    : inner_(std::move(inner)), root_(std::sqrt(inner_->m())) {}

cplx ReciprocalModulusView::K() const {
    return root_ * (inner_->K() + cplx(0.0, 1.0) * inner_->Kprime());
}

cplx ReciprocalModulusView::Kprime() const { return root_ * inner_->Kprime(); }

cplx ReciprocalModulusView::E() const {
    throw DomainError("ReciprocalModulusView: E(1/m) is not provided");
}

cplx ReciprocalModulusView::Eprime() const {
    throw DomainError("ReciprocalModulusView: E'(1/m) is not provided");
}

JacobiTriple ReciprocalModulusView::triple(cplx z) const {
    const JacobiTriple t = inner_->triple(to_inner(z));
    return {root_ * t.sn, t.dn, t.cn};
}

cplx ReciprocalModulusView::zeta(cplx) const {
    throw DomainError("ReciprocalModulusView: Z at 1/m is not provided");
}

std::string ReciprocalModulusView::describe() const {
    return "reciprocal_modulus(" + inner_->describe() + ")";
}

ViewPtr make_direct_view(double m, double pole_eps) {
    return std::make_shared<DirectView>(m, pole_eps);
}

}  // namespace ellcyc
