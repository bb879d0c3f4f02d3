#pragma once

#include <stdexcept>
#include <string>

namespace ergo {

/// Malformed input: parse failures, dimension mismatches, bad arguments.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Well-formed input that violates a mathematical precondition
/// (not stochastic, not primitive, size cap exceeded, ...).
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An internal cross-check between two routes that must agree did not.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ergo
