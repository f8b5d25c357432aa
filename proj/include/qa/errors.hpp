#pragma once

#include <stdexcept>
#include <string>

namespace qa {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance or config text. Carries a 1-based line number when known.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_ = 0;
};

/// A requested state space exceeds the configured memory budget.
class CapacityError : public Error {
public:
  using Error::Error;
};

/// Vector / operator size mismatch.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A quantity that must be bounded away from zero vanished (e.g. a spectral gap).
class SingularityError : public Error {
public:
  using Error::Error;
};

/// Numerical failure: eigensolver non-convergence, norm drift, invalid input data.
class NumericalError : public Error {
public:
  using Error::Error;
};

}  // namespace qa
