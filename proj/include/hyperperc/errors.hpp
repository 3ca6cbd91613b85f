#pragma once

#include <stdexcept>
#include <string>

namespace hyperperc {

// Base of every library error. The CLI maps the subclasses onto exit codes.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed input data: asymmetric rotations, self-loops, bad files.
class StructuralError : public Error {
  public:
    using Error::Error;
};

// A documented precondition of an operation does not hold for the arguments.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

// Work would exceed a configured budget (vertex budget, enumeration size).
class ResourceError : public Error {
  public:
    using Error::Error;
};

// A property that is proved to hold for valid inputs failed. Always a bug.
class InvariantViolation : public Error {
  public:
    using Error::Error;
};

}  // namespace hyperperc
