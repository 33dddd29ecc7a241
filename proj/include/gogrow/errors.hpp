#pragma once

#include <stdexcept>

namespace gogrow {

/// Base class for all gogrow errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numeric argument lies outside the operation's domain
/// (non-finite input, wrong sign, out-of-range parameter).
struct DomainError : Error {
    using Error::Error;
};

/// The switching pair violates a structural requirement,
/// typically a vanishing total rate Gamma1 + Gamma2.
struct InvalidPairError : Error {
    using Error::Error;
};

/// The operation is not defined for this switching-function structure
/// (e.g. an FKPP reduction of a non-constant pair).
struct NotApplicableError : Error {
    using Error::Error;
};

/// Malformed run configuration or schema violation.  Maps to CLI exit code 1.
struct ConfigError : Error {
    using Error::Error;
};

/// Numerical failure at runtime: solver instability, contaminated speed
/// measurement, missing front.  Maps to CLI exit code 2.
struct NumericalError : Error {
    using Error::Error;
};

}  // namespace gogrow
