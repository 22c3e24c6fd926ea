#pragma once

#include <stdexcept>
#include <string>

namespace sodkit {

/// Argument outside the operation's domain (bad horizon, time out of range,
/// mismatched horizons, non-pure event amplitudes, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Input is valid in general but not for this operation, e.g. integrating a
/// signal that already has quadratic pieces.
class UnsupportedInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Size guard of a quadratic or worse routine exceeded.
class SizeGuardError : public std::length_error {
public:
    using std::length_error::length_error;
};

} // namespace sodkit
