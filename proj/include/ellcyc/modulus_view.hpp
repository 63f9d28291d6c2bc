#pragma once

#include <memory>
#include <string>

#include "ellcyc/elliptic_core.hpp"
#include "ellcyc/jacobi.hpp"

namespace ellcyc {

/// The Jacobi functions "at some modulus", as seen by the cyclic evaluator.
///
/// DirectView evaluates at a real parameter in (0, 1). The two substitution
/// views restate functions at 1 - mu and 1/mu in terms of functions at mu:
///
///   sn(x | 1-mu) = -1/sqrt(1-mu) dn(ix + K + iK' | mu)
///   cn(x | 1-mu) = i sqrt(mu)/sqrt(1-mu) cn(ix + K + iK' | mu)
///   dn(x | 1-mu) = sqrt(mu) sn(ix + K + iK' | mu)
///
///   sn(x | 1/mu) = sqrt(mu) sn(x/sqrt(mu) | mu)
///   cn(x | 1/mu) = dn(x/sqrt(mu) | mu)
///   dn(x | 1/mu) = cn(x/sqrt(mu) | mu)
///
/// Views compose, so a double imaginary shift returns to the original
/// parameter through two substitution chains.
class ModulusView {
public:
    virtual ~ModulusView() = default;

    virtual cplx m() const = 0;
    virtual cplx K() const = 0;
    virtual cplx Kprime() const = 0;
    virtual cplx E() const = 0;
    virtual cplx Eprime() const = 0;
    virtual JacobiTriple triple(cplx z) const = 0;
    virtual cplx zeta(cplx z) const = 0;
    virtual std::string describe() const = 0;

    /// The underlying real parameter at which all functions are evaluated.
    virtual double base_m() const = 0;
};

using ViewPtr = std::shared_ptr<const ModulusView>;

class DirectView final : public ModulusView {
public:
    explicit DirectView(double m, double pole_eps = kDefaultPoleEps);

    cplx m() const override { return ctx_.m; }
    cplx K() const override { return ctx_.K; }
    cplx Kprime() const override { return ctx_.Kprime; }
    cplx E() const override { return ctx_.E; }
    cplx Eprime() const override { return ctx_.Eprime; }
    JacobiTriple triple(cplx z) const override;
    cplx zeta(cplx z) const override;
    std::string describe() const override;
    double base_m() const override { return ctx_.m; }

    const ModulusContext& context() const noexcept { return ctx_; }

private:
    ModulusContext ctx_;
    double pole_eps_;
};

/// Effective parameter 1 - mu where mu is the inner view's parameter.
class ImaginaryShiftView final : public ModulusView {
public:
    explicit ImaginaryShiftView(ViewPtr inner);

    cplx m() const override { return 1.0 - inner_->m(); }
    cplx K() const override { return inner_->Kprime(); }
    cplx Kprime() const override { return inner_->K(); }
    cplx E() const override { return inner_->Eprime(); }
    cplx Eprime() const override { return inner_->E(); }
    JacobiTriple triple(cplx z) const override;
    cplx zeta(cplx z) const override;
    std::string describe() const override;
    double base_m() const override { return inner_->base_m(); }

    /// Maps a point x of this view to the inner variable u = ix + K + iK'.
    cplx to_inner(cplx x) const;
    /// Inverse of to_inner.
    cplx from_inner(cplx u) const;

private:
    ViewPtr inner_;
};

/// Effective parameter 1/mu. E, E' and Z are not available at 1/mu and throw.
class ReciprocalModulusView final : public ModulusView {
public:
    explicit ReciprocalModulusView(ViewPtr inner);

    cplx m() const override { return 1.0 / inner_->m(); }
    cplx K() const override;
    cplx Kprime() const override;
    cplx E() const override;
    cplx Eprime() const override;
    JacobiTriple triple(cplx z) const override;
    cplx zeta(cplx z) const override;
    std::string describe() const override;
    double base_m() const override { return inner_->base_m(); }

    cplx to_inner(cplx x) const { return x / root_; }
    cplx from_inner(cplx u) const { return u * root_; }

private:
    ViewPtr inner_;
    cplx root_;  // sqrt(mu)
};

ViewPtr make_direct_view(double m, double pole_eps = kDefaultPoleEps);

}  // namespace ellcyc
