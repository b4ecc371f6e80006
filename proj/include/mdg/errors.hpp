#pragma once

#include <stdexcept>
#include <string>

namespace mdg {

/// Base of every error this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs violate a documented precondition (bad params, bad config).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A generator reduces to (0,0) modulo the quotient modulus.
class DegenerateQuotient : public Error {
public:
    using Error::Error;
};

/// Exact independence number requested above the vertex cap.
class InstanceTooLarge : public Error {
public:
    using Error::Error;
};

/// Ratio bound requested outside inf < 0 < sup.
class VacuousBound : public Error {
public:
    using Error::Error;
};

/// An exact mathematical check failed. Carries a human-readable witness.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

}  // namespace mdg
