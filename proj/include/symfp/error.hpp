#pragma once

#include <stdexcept>
#include <string>

namespace symfp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: wrong dimension, value out of range, non-prime modulus.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An exhaustive computation would exceed its enumeration budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// A theorem- or algorithm-level precondition does not hold.
class PreconditionViolated : public Error {
public:
    using Error::Error;
};

}  // namespace symfp
