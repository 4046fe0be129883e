#pragma once

// Complex arithmetic on MPFR floats with a per-value precision. Only the
// high-precision route of the series engine uses this.

#include <mpfr.h>

#include "qcayley/scaled_complex.hpp"

namespace qcayley::detail {

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec);
  BigFloat(double x, mpfr_prec_t prec);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

 private:
  mpfr_t value_;
};

class BigComplex {
 public:
  explicit BigComplex(mpfr_prec_t prec);
  BigComplex(Complex z, mpfr_prec_t prec);
  BigComplex(const ScaledReal& x, mpfr_prec_t prec);

  /// q^m rounded to the given precision.
  static BigComplex power(double q, unsigned long m, mpfr_prec_t prec);

  BigComplex& operator+=(const BigComplex& rhs);
  BigComplex& operator-=(const BigComplex& rhs);
  BigComplex& operator*=(const BigComplex& rhs);
  BigComplex& operator/=(const BigComplex& rhs);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }

  bool is_zero() const noexcept;
  ScaledReal abs() const;
  ScaledComplex to_scaled() const;
  mpfr_prec_t precision() const noexcept { return re_.precision(); }

 private:
  BigFloat re_;
  BigFloat im_;
};

}  // namespace qcayley::detail
