#pragma once

#include <stdexcept>
#include <string>

namespace thr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad dimensions, ill-defined maps,
/// ring axioms that fail, Mackey laws that fail.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A request that would require enumerating an infinite object.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Never expected on valid input.
class CertificateError : public Error {
 public:
  using Error::Error;
};

}  // namespace thr
