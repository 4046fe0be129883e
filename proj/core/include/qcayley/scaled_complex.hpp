#pragma once

#include <complex>
#include <cstdint>

namespace qcayley {

using Complex = std::complex<double>;

/// Result of converting an extended-exponent value back to plain doubles.
/// When `overflow` is set the value is outside the double range and `value`
/// holds the mantissa only.
template <class T>
struct FloatConversion {
  T value{};
  bool overflow = false;
};

/// A non-negative real m * 2^e with 0.5 <= m < 2 (or m = e = 0).
///
/// Used for lattice points t = q^k and for moduli of ScaledComplex values,
/// both of which leave the double range long before the lattice indices do.
class ScaledReal {
 public:
  constexpr ScaledReal() = default;

  /// Throws ParameterError for negative or non-finite input.
  static ScaledReal from_double(double x);
  static ScaledReal from_parts(double mantissa, std::int64_t exponent);

  double mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_ == 0.0; }

  /// log2 of the value; -inf for zero.
  double log2() const noexcept;
  FloatConversion<double> to_float() const noexcept;
  /// Saturating conversion: +inf on overflow, 0 on underflow.
  double to_double() const noexcept;

  ScaledReal& operator*=(const ScaledReal& rhs) noexcept;
  ScaledReal& operator/=(const ScaledReal& rhs);
  ScaledReal& operator+=(const ScaledReal& rhs) noexcept;

  friend ScaledReal operator*(ScaledReal a, const ScaledReal& b) noexcept { return a *= b; }
  friend ScaledReal operator/(ScaledReal a, const ScaledReal& b) { return a /= b; }
  friend ScaledReal operator+(ScaledReal a, const ScaledReal& b) noexcept { return a += b; }

  /// Ordering by value (not by representation).
  friend std::partial_ordering operator<=>(const ScaledReal& a, const ScaledReal& b) noexcept;
  friend bool operator==(const ScaledReal& a, const ScaledReal& b) noexcept = default;

 private:
  void normalize() noexcept;

  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

/// A complex number m * 2^e with a double-precision complex mantissa and a
/// 64-bit binary exponent.
///
/// Normalized form: m = 0 and e = 0, or 0.5 <= |m| < 2. A mantissa already in
/// that window is left untouched; otherwise it is rescaled into [1, 2) by an
/// exact power of two. Equality compares representations.
class ScaledComplex {
 public:
  constexpr ScaledComplex() = default;

  /// Throws ParameterError for non-finite input.
  static ScaledComplex from_complex(Complex z);
  static ScaledComplex from_real(double x) { return from_complex(Complex(x, 0.0)); }
  static ScaledComplex from_scaled_real(const ScaledReal& r) noexcept;
  /// Builds mantissa * 2^exponent and normalizes it.
  static ScaledComplex from_parts(Complex mantissa, std::int64_t exponent);

  static ScaledComplex zero() noexcept { return {}; }
  static ScaledComplex one() noexcept { return from_parts_unchecked({1.0, 0.0}, 0); }

  Complex mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_ == Complex{}; }
  bool is_normalized() const noexcept;

  ScaledReal abs() const noexcept;
  /// z / |z| as a plain complex number; zero maps to zero.
  Complex phase() const noexcept;
  ScaledComplex conj() const noexcept;
  FloatConversion<Complex> to_float() const noexcept;

  ScaledComplex& operator*=(const ScaledComplex& rhs) noexcept;
  ScaledComplex& operator*=(const ScaledReal& rhs) noexcept;
  ScaledComplex& operator*=(Complex rhs);
  /// Throws DivisionByZeroError when rhs is zero.
  ScaledComplex& operator/=(const ScaledComplex& rhs);
  ScaledComplex& operator+=(const ScaledComplex& rhs) noexcept;
  ScaledComplex& operator-=(const ScaledComplex& rhs) noexcept;
  ScaledComplex operator-() const noexcept;

  friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) noexcept { return a *= b; }
  friend ScaledComplex operator*(ScaledComplex a, const ScaledReal& b) noexcept { return a *= b; }
  friend ScaledComplex operator*(ScaledComplex a, Complex b) { return a *= b; }
  friend ScaledComplex operator/(ScaledComplex a, const ScaledComplex& b) { return a /= b; }
  friend ScaledComplex operator+(ScaledComplex a, const ScaledComplex& b) noexcept { return a += b; }
  friend ScaledComplex operator-(ScaledComplex a, const ScaledComplex& b) noexcept { return a -= b; }

  friend bool operator==(const ScaledComplex& a, const ScaledComplex& b) noexcept = default;

  /// Exponent gap beyond which the smaller addend is absorbed.
  static constexpr std::int64_t kAbsorptionGap = 64;

 private:
  static ScaledComplex from_parts_unchecked(Complex m, std::int64_t e) noexcept {
    ScaledComplex z;
    z.mantissa_ = m;
    z.exponent_ = e;
    return z;
  }
  void normalize() noexcept;

  Complex mantissa_{};
  std::int64_t exponent_ = 0;
};

/// |a - b| / max(|a|, |b|), computed without leaving the scaled domain; 0 when
/// both are zero.
double relative_difference(const ScaledComplex& a, const ScaledComplex& b) noexcept;

}  // namespace qcayley
