#pragma once

#include <stdexcept>
#include <string>

namespace folcoh {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live over different coordinate systems.
class CoordinateMismatch : public Error {
public:
    CoordinateMismatch() : Error("coordinate system mismatch") {}
};

class IndexOutOfRange : public Error {
public:
    IndexOutOfRange(const std::string& what, std::size_t index, std::size_t bound)
        : Error(what + " index " + std::to_string(index) + " out of range [0, " +
                std::to_string(bound) + ")") {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t column)
        : Error("parse error at column " + std::to_string(column) + ": " + message),
          column_(column) {}

    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

/// An input violates the mathematical precondition of an operation
/// (not a cocycle, not closed, not in a kernel, ...).  Subclasses carry
/// the offending data.
class PreconditionViolation : public Error {
public:
    using Error::Error;
};

/// Raised when a self-verification residual turns out nonzero.  Seeing this
/// means a bug in the engine, not in the input.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

}  // namespace folcoh
