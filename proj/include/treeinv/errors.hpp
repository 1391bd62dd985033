#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treeinv {

/// Malformed or inconsistent input (ring mismatch, bad address, bad model).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Text that failed to parse. `position()` is a byte offset into the input.
class ParseError : public InputError {
public:
    ParseError(const std::string &what, std::size_t position)
        : InputError(what + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Division by a non-unit, or reversion of a series with a non-invertible
/// linear coefficient.
class NotInvertibleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computation would exceed its configured size budget and was refused.
class SizeGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The input is well formed but lies outside what is implemented.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace treeinv
