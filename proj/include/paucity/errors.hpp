#pragma once

#include <stdexcept>
#include <string>

namespace paucity {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (n = 0, N < 3, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Zero or constant polynomial where a nonconstant one is required.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A memory, time or size budget was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An internal cross-check or a proved bound failed. Always a bug.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace paucity
