#pragma once

#include <stdexcept>
#include <string>

namespace hmdf {

/// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (parse failures, bad indices, ordering violations).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical engine could not produce a result.
class EngineError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure exhausted its budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace hmdf
