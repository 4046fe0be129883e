#include "big_complex.hpp"

#include <algorithm>
#include <cmath>

#include "qcayley/errors.hpp"

namespace qcayley::detail {
namespace {

// x = m * 2^e with 0.5 <= |m| < 1, or m = 0.
ScaledReal to_scaled_real(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return {};
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, x, MPFR_RNDN);
  return ScaledReal::from_parts(std::abs(m), e);
}

}  // namespace

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double x, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, x, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigComplex::BigComplex(mpfr_prec_t prec) : re_(prec), im_(prec) {}

BigComplex::BigComplex(Complex z, mpfr_prec_t prec) : re_(z.real(), prec), im_(z.imag(), prec) {}

BigComplex::BigComplex(const ScaledReal& x, mpfr_prec_t prec) : re_(x.mantissa(), prec), im_(prec) {
  mpfr_mul_2si(re_.get(), re_.get(), x.exponent(), MPFR_RNDN);
}

BigComplex BigComplex::power(double q, unsigned long m, mpfr_prec_t prec) {
  BigComplex out(prec);
  BigFloat base(q, prec);
  mpfr_pow_ui(out.re_.get(), base.get(), m, MPFR_RNDN);
  return out;
}

BigComplex& BigComplex::operator+=(const BigComplex& rhs) {
  mpfr_add(re_.get(), re_.get(), rhs.re_.get(), MPFR_RNDN);
  mpfr_add(im_.get(), im_.get(), rhs.im_.get(), MPFR_RNDN);
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& rhs) {
  mpfr_sub(re_.get(), re_.get(), rhs.re_.get(), MPFR_RNDN);
  mpfr_sub(im_.get(), im_.get(), rhs.im_.get(), MPFR_RNDN);
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& rhs) {
  const mpfr_prec_t prec = std::max(precision(), rhs.precision());
  BigFloat ac(prec), bd(prec), ad(prec), bc(prec);
  mpfr_mul(ac.get(), re_.get(), rhs.re_.get(), MPFR_RNDN);
  mpfr_mul(bd.get(), im_.get(), rhs.im_.get(), MPFR_RNDN);
  mpfr_mul(ad.get(), re_.get(), rhs.im_.get(), MPFR_RNDN);
  mpfr_mul(bc.get(), im_.get(), rhs.re_.get(), MPFR_RNDN);
  mpfr_sub(re_.get(), ac.get(), bd.get(), MPFR_RNDN);
  mpfr_add(im_.get(), ad.get(), bc.get(), MPFR_RNDN);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& rhs) {
  if (rhs.is_zero()) throw DivisionByZeroError("BigComplex division by zero");
  const mpfr_prec_t prec = std::max(precision(), rhs.precision());
  BigFloat denom(prec), tmp(prec), ac(prec), bd(prec), bc(prec), ad(prec);
  mpfr_sqr(denom.get(), rhs.re_.get(), MPFR_RNDN);
  mpfr_sqr(tmp.get(), rhs.im_.get(), MPFR_RNDN);
  mpfr_add(denom.get(), denom.get(), tmp.get(), MPFR_RNDN);
  mpfr_mul(ac.get(), re_.get(), rhs.re_.get(), MPFR_RNDN);
  mpfr_mul(bd.get(), im_.get(), rhs.im_.get(), MPFR_RNDN);
  mpfr_mul(bc.get(), im_.get(), rhs.re_.get(), MPFR_RNDN);
  mpfr_mul(ad.get(), re_.get(), rhs.im_.get(), MPFR_RNDN);
  mpfr_add(re_.get(), ac.get(), bd.get(), MPFR_RNDN);
  mpfr_sub(im_.get(), bc.get(), ad.get(), MPFR_RNDN);
  mpfr_div(re_.get(), re_.get(), denom.get(), MPFR_RNDN);
  mpfr_div(im_.get(), im_.get(), denom.get(), MPFR_RNDN);
  return *this;
}

bool BigComplex::is_zero() const noexcept {
  return mpfr_zero_p(re_.get()) && mpfr_zero_p(im_.get());
}

ScaledReal BigComplex::abs() const {
  BigFloat h(precision());
  mpfr_hypot(h.get(), re_.get(), im_.get(), MPFR_RNDN);
  return to_scaled_real(h.get());
}

ScaledComplex BigComplex::to_scaled() const {
  if (is_zero()) return {};
  // Pull out a common exponent so both components survive the conversion.
  const mpfr_exp_t er = mpfr_zero_p(re_.get()) ? MPFR_EMIN_MIN : mpfr_get_exp(re_.get());
  const mpfr_exp_t ei = mpfr_zero_p(im_.get()) ? MPFR_EMIN_MIN : mpfr_get_exp(im_.get());
  const mpfr_exp_t e = std::max(er, ei);
  BigFloat r(precision()), i(precision());
  mpfr_mul_2si(r.get(), re_.get(), -e, MPFR_RNDN);
  mpfr_mul_2si(i.get(), im_.get(), -e, MPFR_RNDN);
  return ScaledComplex::from_parts(
      Complex(mpfr_get_d(r.get(), MPFR_RNDN), mpfr_get_d(i.get(), MPFR_RNDN)), e);
}

}  // namespace qcayley::detail
