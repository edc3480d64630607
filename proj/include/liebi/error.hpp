#pragma once

#include <stdexcept>
#include <string>

namespace liebi {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatch, non-finite entries, broken invariants.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input on which an operation's preconditions fail.
class RefusedError : public Error {
 public:
  using Error::Error;
};

}  // namespace liebi
