#pragma once

#include <stdexcept>
#include <string>

namespace quinary {

/// Invalid input to an operation (maps to CLI exit code 2).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A request exceeds a configured memory or work budget (exit code 3).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure failed to meet its accuracy target (exit code 4).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was invoked on an object that lacks required state, e.g. a
/// prime table that does not cover the requested interval.
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace quinary
