#pragma once

#include <stdexcept>
#include <string>

namespace twistkit {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different rings (degree, parameter alphabet or quotient
/// context disagree) or a module map is applied to the wrong module.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold (d < 3, n' < d^2,
/// a parity violation in a twist schedule, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A parameter name outside the alphabet fixed for the current degree.
class UnknownParameter : public Error {
 public:
  explicit UnknownParameter(const std::string& name)
      : Error("unknown parameter '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// An internal identity that must hold by construction failed. Reaching this
/// means a computation is wrong, not that the input was bad.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace twistkit
