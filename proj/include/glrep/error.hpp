#pragma once

#include <stdexcept>
#include <string>

namespace glrep {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical precondition of an operation does not hold
// (non-composable maps, impure input, non-thin complex, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A library invariant was violated; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] inline void precondition_failed(const std::string& what) { throw PreconditionError(what); }
[[noreturn]] inline void internal_failure(const std::string& what) { throw InternalError(what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) precondition_failed(what);
}

}  // namespace glrep
