#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace openbook {

/// Bad input: malformed text, mismatched dimensions, violated preconditions.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Syntax error in a polynomial expression or germ file.
class ParseError : public InputError {
public:
    ParseError(const std::string& message, std::size_t position)
        : InputError(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class DimensionError : public InputError {
public:
    using InputError::InputError;
};

/// An operation was called on an object outside its supported arity or chart.
class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

/// Numerical procedure could not produce a result (all samples in the tube,
/// divergence with no fallback, ...).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace openbook
