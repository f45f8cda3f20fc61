#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stwave {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (non-positive length, degree out of range, ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Operands of a matrix/vector operation have incompatible shapes or sparsity.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A function sample at a quadrature point was not finite.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, double x, double t)
        : Error(what + " at (x=" + std::to_string(x) + ", t=" + std::to_string(t) + ")"), x_(x), t_(t) {}

    double x() const noexcept { return x_; }
    double t() const noexcept { return t_; }

private:
    double x_;
    double t_;
};

/// The direct solver met a zero or numerically negligible pivot.
class SolverFailure : public Error {
public:
    SolverFailure(const std::string& what, std::size_t pivot)
        : Error(what + " (pivot " + std::to_string(pivot) + ")"), pivot_(pivot) {}

    /// Row/column index of the failing pivot in the factorised matrix.
    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

} // namespace stwave
