#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcayley {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside the range an operation accepts (q <= 1, eta > 1/2, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The coefficient w lies in the excluded set where a numerator or denominator
/// of the step ratio vanishes.
class ForbiddenCoefficientError : public Error {
 public:
  ForbiddenCoefficientError(const std::string& what, std::int64_t k)
      : Error(what), k_(k) {}
  std::int64_t k() const noexcept { return k_; }

 private:
  std::int64_t k_;
};

/// The analysis does not apply to these parameters (w = 0 or eta = 1/2 for the
/// stability engine).
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

/// Caller-supplied data violates an operation's premise, e.g. |E| > eps.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A series did not satisfy its truncation rule within the term cap.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// An iteration did not converge inside the lattice window.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcayley
