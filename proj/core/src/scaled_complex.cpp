#include "qcayley/scaled_complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcayley/errors.hpp"

namespace qcayley {
namespace {

constexpr std::int64_t kMaxDoubleExponent = 1023;   // m < 2 keeps m * 2^1023 finite
constexpr std::int64_t kUnderflowExponent = -1200;  // below this ldexp returns 0 anyway

double ldexp64(double m, std::int64_t e) noexcept {
  e = std::clamp<std::int64_t>(e, -4000, 4000);
  return std::ldexp(m, static_cast<int>(e));
}

}  // namespace

// ---------------------------------------------------------------- ScaledReal

ScaledReal ScaledReal::from_double(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw ParameterError("ScaledReal requires a finite non-negative value");
  }
  return from_parts(x, 0);
}

ScaledReal ScaledReal::from_parts(double mantissa, std::int64_t exponent) {
  if (!std::isfinite(mantissa) || mantissa < 0.0) {
    throw ParameterError("ScaledReal mantissa must be finite and non-negative");
  }
  ScaledReal r;
  r.mantissa_ = mantissa;
  r.exponent_ = exponent;
  r.normalize();
  return r;
}

void ScaledReal::normalize() noexcept {
  if (mantissa_ == 0.0) {
    exponent_ = 0;
    return;
  }
  if (mantissa_ >= 0.5 && mantissa_ < 2.0) return;
  int e = 0;
  const double f = std::frexp(mantissa_, &e);
  mantissa_ = 2.0 * f;
  exponent_ += e - 1;
}

double ScaledReal::log2() const noexcept {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log2(mantissa_) + static_cast<double>(exponent_);
}

FloatConversion<double> ScaledReal::to_float() const noexcept {
  if (exponent_ > kMaxDoubleExponent) return {mantissa_, true};
  if (exponent_ < kUnderflowExponent) return {0.0, false};
  return {ldexp64(mantissa_, exponent_), false};
}

double ScaledReal::to_double() const noexcept {
  const auto c = to_float();
  return c.overflow ? std::numeric_limits<double>::infinity() : c.value;
}

ScaledReal& ScaledReal::operator*=(const ScaledReal& rhs) noexcept {
  mantissa_ *= rhs.mantissa_;
  exponent_ += rhs.exponent_;
  normalize();
  return *this;
}

ScaledReal& ScaledReal::operator/=(const ScaledReal& rhs) {
  if (rhs.is_zero()) throw DivisionByZeroError("ScaledReal division by zero");
  mantissa_ /= rhs.mantissa_;
  exponent_ -= rhs.exponent_;
  normalize();
  return *this;
}

ScaledReal& ScaledReal::operator+=(const ScaledReal& rhs) noexcept {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  const ScaledReal& big = exponent_ >= rhs.exponent_ ? *this : rhs;
  const ScaledReal& small = exponent_ >= rhs.exponent_ ? rhs : *this;
  const std::int64_t gap = big.exponent_ - small.exponent_;
  if (gap > ScaledComplex::kAbsorptionGap) return *this = big;
  ScaledReal out;
  out.mantissa_ = big.mantissa_ + ldexp64(small.mantissa_, -gap);
  out.exponent_ = big.exponent_;
  out.normalize();
  return *this = out;
}

std::partial_ordering operator<=>(const ScaledReal& a, const ScaledReal& b) noexcept {
  if (a.is_zero() || b.is_zero()) return a.mantissa_ <=> b.mantissa_;
  // Both mantissas lie in [0.5, 2): compare on a common exponent.
  const std::int64_t gap = a.exponent_ - b.exponent_;
  if (gap > 2) return std::partial_ordering::greater;
  if (gap < -2) return std::partial_ordering::less;
  return ldexp64(a.mantissa_, gap) <=> b.mantissa_;
}

// ------------------------------------------------------------- ScaledComplex

ScaledComplex ScaledComplex::from_complex(Complex z) {
  return from_parts(z, 0);
}

ScaledComplex ScaledComplex::from_scaled_real(const ScaledReal& r) noexcept {
  return from_parts_unchecked({r.mantissa(), 0.0}, r.exponent());
}

ScaledComplex ScaledComplex::from_parts(Complex mantissa, std::int64_t exponent) {
  if (!std::isfinite(mantissa.real()) || !std::isfinite(mantissa.imag())) {
    throw ParameterError("ScaledComplex requires finite components");
  }
  ScaledComplex z = from_parts_unchecked(mantissa, exponent);
  z.normalize();
  return z;
}

void ScaledComplex::normalize() noexcept {
  double re = mantissa_.real();
  double im = mantissa_.imag();
  if (re == 0.0 && im == 0.0) {
    mantissa_ = {};
    exponent_ = 0;
    return;
  }
  double mag = std::hypot(re, im);
  if (mag >= 0.5 && mag < 2.0) return;
  if (!std::isfinite(mag)) {
    int e = 0;
    std::frexp(std::max(std::abs(re), std::abs(im)), &e);
    re = std::ldexp(re, -e);
    im = std::ldexp(im, -e);
    exponent_ += e;
    mag = std::hypot(re, im);
    if (mag >= 0.5 && mag < 2.0) {
      mantissa_ = {re, im};
      return;
    }
  }
  int e = 0;
  std::frexp(mag, &e);
  mantissa_ = {std::ldexp(re, 1 - e), std::ldexp(im, 1 - e)};
  exponent_ += e - 1;
}

bool ScaledComplex::is_normalized() const noexcept {
  if (is_zero()) return exponent_ == 0;
  const double mag = std::abs(mantissa_);
  return mag >= 0.5 && mag < 2.0;
}

ScaledReal ScaledComplex::abs() const noexcept {
  if (is_zero()) return {};
  return ScaledReal::from_parts(std::hypot(mantissa_.real(), mantissa_.imag()), exponent_);
}

Complex ScaledComplex::phase() const noexcept {
  if (is_zero()) return {};
  return mantissa_ / std::hypot(mantissa_.real(), mantissa_.imag());
}

ScaledComplex ScaledComplex::conj() const noexcept {
  return from_parts_unchecked(std::conj(mantissa_), exponent_);
}

FloatConversion<Complex> ScaledComplex::to_float() const noexcept {
  if (exponent_ > kMaxDoubleExponent) return {mantissa_, true};
  if (exponent_ < kUnderflowExponent) return {Complex{}, false};
  return {Complex(ldexp64(mantissa_.real(), exponent_), ldexp64(mantissa_.imag(), exponent_)),
          false};
}

ScaledComplex& ScaledComplex::operator*=(const ScaledComplex& rhs) noexcept {
  const double ar = mantissa_.real(), ai = mantissa_.imag();
  const double br = rhs.mantissa_.real(), bi = rhs.mantissa_.imag();
  mantissa_ = {ar * br - ai * bi, ar * bi + ai * br};
  exponent_ += rhs.exponent_;
  normalize();
  return *this;
}

ScaledComplex& ScaledComplex::operator*=(const ScaledReal& rhs) noexcept {
  mantissa_ *= rhs.mantissa();
  exponent_ += rhs.exponent();
  normalize();
  return *this;
}

ScaledComplex& ScaledComplex::operator*=(Complex rhs) {
  return *this *= from_complex(rhs);
}

ScaledComplex& ScaledComplex::operator/=(const ScaledComplex& rhs) {
  if (rhs.is_zero()) throw DivisionByZeroError("ScaledComplex division by zero");
  const double br = rhs.mantissa_.real(), bi = rhs.mantissa_.imag();
  const double ar = mantissa_.real(), ai = mantissa_.imag();
  const double n = br * br + bi * bi;  // in [0.25, 4)
  mantissa_ = {(ar * br + ai * bi) / n, (ai * br - ar * bi) / n};
  exponent_ -= rhs.exponent_;
  normalize();
  return *this;
}

ScaledComplex& ScaledComplex::operator+=(const ScaledComplex& rhs) noexcept {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  const bool this_big = exponent_ >= rhs.exponent_;
  const ScaledComplex& big = this_big ? *this : rhs;
  const ScaledComplex& small = this_big ? rhs : *this;
  const std::int64_t gap = big.exponent_ - small.exponent_;
  if (gap > kAbsorptionGap) return *this = big;
  const Complex shifted(ldexp64(small.mantissa_.real(), -gap),
                        ldexp64(small.mantissa_.imag(), -gap));
  ScaledComplex out = from_parts_unchecked(big.mantissa_ + shifted, big.exponent_);
  out.normalize();
  return *this = out;
}

ScaledComplex& ScaledComplex::operator-=(const ScaledComplex& rhs) noexcept {
  return *this += -rhs;
}

ScaledComplex ScaledComplex::operator-() const noexcept {
  return from_parts_unchecked(-mantissa_, exponent_);
}

double relative_difference(const ScaledComplex& a, const ScaledComplex& b) noexcept {
  const ScaledReal scale = std::max(a.abs(), b.abs(), [](const ScaledReal& x, const ScaledReal& y) {
    return x < y;
  });
  if (scale.is_zero()) return 0.0;
  return ((a - b).abs() / scale).to_double();
}

}  // namespace qcayley
