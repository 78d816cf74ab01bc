#pragma once

#include <stdexcept>
#include <string>

namespace flowcalc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in different dimensions or have incompatible grades.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A wedge product whose grade would exceed the ambient dimension.
class GradeOverflowError : public Error {
public:
    using Error::Error;
};

/// Syntax or declaration problem in an input text, with a 1-based position.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// Expression evaluated outside its domain (log of a nonpositive number, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Tangent vectors of a surface or curve element are rank deficient.
class DegenerateElementError : public Error {
public:
    using Error::Error;
};

/// Iterative solver ran out of sweeps.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& what, double last_residual)
        : Error(what), last_residual_(last_residual) {}

    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

/// Invalid argument value (nonpositive step, degenerate region, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

} // namespace flowcalc
