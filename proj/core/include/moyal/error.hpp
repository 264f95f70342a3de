#pragma once

#include <stdexcept>
#include <string>

namespace moyal {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on theta or truncation.
class CompositionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A size limit that keeps dense or quadrature work tractable was exceeded.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// The truncation is too small for the requested object.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int suggested_truncation)
      : Error(what), suggested_(suggested_truncation) {}

  /// Smallest truncation that would satisfy the request, or 0 if unknown.
  int suggested_truncation() const noexcept { return suggested_; }

 private:
  int suggested_;
};

/// A precondition on the inputs of a composite check failed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized payload.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace moyal
