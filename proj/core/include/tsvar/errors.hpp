#pragma once

#include <stdexcept>
#include <string>

namespace tsvar {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point or argument lies outside the set an operation is defined on.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The delta derivative does not exist at the requested point.
class UndefinedDerivative : public DomainError {
public:
    using DomainError::DomainError;
};

/// A caller-side precondition (beyond plain domain membership) failed.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The operation is deliberately not implemented for this kind of input.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// An iterative procedure stopped before reaching its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_estimate, double last_error)
        : Error(what), last_estimate_(last_estimate), last_error_(last_error) {}

    double last_estimate() const noexcept { return last_estimate_; }
    double last_error() const noexcept { return last_error_; }

private:
    double last_estimate_;
    double last_error_;
};

} // namespace tsvar
