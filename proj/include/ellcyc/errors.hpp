#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellcyc {

using cplx = std::complex<double>;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (e.g. m outside (0,1)).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation point lies within `pole_eps` of a pole.
class PoleError : public Error {
public:
    PoleError(const std::string& what, cplx pole) : Error(what), pole_(pole) {}
    cplx pole() const noexcept { return pole_; }

private:
    cplx pole_;
};

/// Denominator of an auxiliary ratio vanishes at the requested point.
class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

/// Series or contour iteration failed to reach the requested accuracy.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Catalog text does not match the grammar.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column, std::vector<std::string> expected = {});

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    int line_;
    int column_;
    std::vector<std::string> expected_;
};

/// Catalog is syntactically valid but violates a structural rule.
class SemanticError : public Error {
public:
    using Error::Error;
};

/// Parameters (p, r, s, t) violate an identity's constraints.
class ConstraintError : public Error {
public:
    using Error::Error;
};

/// A coefficient expression hits a pole of one of its functions.
class SingularCoefficientError : public Error {
public:
    using Error::Error;
};

}  // namespace ellcyc
