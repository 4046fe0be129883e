#pragma once

// Tail sums T_k = sum_{m >= k} g_m E_m / P_m with g_m = (q-1) q^m / num_m.
// Summed in ScaledComplex first; if the condition number says the double
// result cannot be trusted, the same series is re-summed with MPFR.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "big_complex.hpp"
#include "qcayley/cayley.hpp"
#include "qcayley/errors.hpp"
#include "qcayley/hus.hpp"
#include "qcayley/lattice.hpp"
#include "qcayley/scaled_complex.hpp"

namespace qcayley::detail {

struct DoublePolicy {
  using Num = ScaledComplex;

  Num make(Complex z) const { return ScaledComplex::from_complex(z); }
  Num one() const { return ScaledComplex::one(); }
  Num zero() const { return ScaledComplex::zero(); }
  Num power(double q, std::int64_t m) const {
    return ScaledComplex::from_scaled_real(lattice_value(q, m));
  }
  static ScaledComplex to_scaled(const Num& x) { return x; }
  static ScaledReal abs(const Num& x) { return x.abs(); }
  int bits() const { return 53; }
};

struct BigPolicy {
  using Num = BigComplex;
  mpfr_prec_t prec;

  Num make(Complex z) const { return BigComplex(z, prec); }
  Num one() const { return BigComplex(Complex(1.0, 0.0), prec); }
  Num zero() const { return BigComplex(prec); }
  Num power(double q, std::int64_t m) const {
    return BigComplex::power(q, static_cast<unsigned long>(m), prec);
  }
  static ScaledComplex to_scaled(const Num& x) { return x.to_scaled(); }
  static ScaledReal abs(const Num& x) { return x.abs(); }
  int bits() const { return static_cast<int>(prec); }
};

/// P_m and g_m / P_m for m = 0, 1, ..., grown on demand.
template <class Policy>
class SeriesTable {
 public:
  using Num = typename Policy::Num;

  SeriesTable(Policy policy, const CayleyParams& params)
      : policy_(policy),
        params_(params),
        a_(policy.make(params.w() * ((1.0 - params.eta()) * (params.q() - 1.0)))),
        b_(policy.make(params.w() * (params.eta() * (params.q() - 1.0)))),
        h_(policy.make(Complex(params.q() - 1.0, 0.0))) {
    params.require_usable();
    P_.push_back(policy_.one());
  }

  const Num& P(std::int64_t m) {
    extend_to(m);
    return P_[static_cast<std::size_t>(m)];
  }

  /// g_m / P_m.
  const Num& unit(std::int64_t m) {
    extend_to(m);
    return unit_[static_cast<std::size_t>(m)];
  }

 private:
  void extend_to(std::int64_t m) {
    while (static_cast<std::int64_t>(unit_.size()) <= m) {
      const auto j = static_cast<std::int64_t>(unit_.size());
      const Num t = policy_.power(params_.q(), j);
      const Num num = policy_.one() + a_ * t;
      const Num den = policy_.one() - b_ * t;
      if (num.is_zero() || den.is_zero()) {
        throw ForbiddenCoefficientError("step ratio degenerates at k = " + std::to_string(j), j);
      }
      const Num& p = P_.back();
      unit_.push_back(h_ * t / num / p);
      P_.push_back(p * num / den);
    }
  }

  Policy policy_;
  CayleyParams params_;
  Num a_;
  Num b_;
  Num h_;
  std::vector<Num> P_;
  std::vector<Num> unit_;
};

struct TailRequest {
  std::int64_t k_lo = 0;
  std::int64_t k_hi = 0;
  double tolerance = kTailTolerance;
  std::int64_t cap = kTailTermCap;
};

struct TailOutcome {
  /// P_k T_k for k = k_lo..k_hi.
  std::vector<ScaledComplex> weighted;
  /// T_{k_lo}.
  ScaledComplex tail_lo;
  TruncationInfo truncation;
  /// log2 of max_k |w| |P_k| sum_{m >= k} |g_m / P_m|.
  double condition_log2 = 0.0;
  /// Index of the last summed term.
  std::int64_t last_index = 0;
  int precision_bits = 53;
};

/// Unit forcing E = 1.
struct UnitForcing {
  Complex operator()(std::int64_t) const { return {1.0, 0.0}; }
  double sup_from(std::int64_t) const { return 1.0; }
};

template <class Policy, class Forcing>
TailOutcome run_tails(const Policy& policy, const CayleyParams& params, Forcing& forcing,
                      const TailRequest& req) {
  using Num = typename Policy::Num;
  if (req.k_lo < 0 || req.k_hi < req.k_lo) {
    throw ParameterError("tail range must satisfy 0 <= k_lo <= k_hi");
  }
  SeriesTable<Policy> table(policy, params);
  const double rho = majorant_ratio(params.eta());
  const ScaledReal geometric = ScaledReal::from_double(rho / (1.0 - rho));
  // Absolute truncation error e gives error |P_k| e on every weighted tail, so
  // the tolerance is tightened until that stays below tol |P_{k_hi}| |partial|.
  ScaledReal tol = ScaledReal::from_double(req.tolerance);
  const ScaledReal p_hi = Policy::abs(table.P(req.k_hi));
  for (std::int64_t k = req.k_lo; k < req.k_hi; ++k) {
    const ScaledReal p_k = Policy::abs(table.P(k));
    if (p_k > p_hi) tol = std::min(tol, ScaledReal::from_double(req.tolerance) * p_hi / p_k);
  }

  std::vector<Num> terms;
  std::vector<ScaledReal> mags;
  for (std::int64_t n = req.k_lo; n < req.k_hi; ++n) {
    const Num& u = table.unit(n);
    terms.push_back(u * policy.make(forcing(n)));
    mags.push_back(Policy::abs(u));
  }

  TailOutcome out;
  Num partial = policy.zero();
  int small_run = 0;
  double ratio = 0.0;
  double bound_rel = 0.0;
  std::int64_t n = req.k_hi;
  for (;; ++n) {
    if (n - req.k_hi >= req.cap) {
      throw TruncationError("tail series did not meet the truncation rule within " +
                            std::to_string(req.cap) + " terms");
    }
    const Num& u = table.unit(n);
    const Num term = u * policy.make(forcing(n));
    const ScaledReal a = Policy::abs(u);
    partial += term;
    const ScaledReal partial_abs = Policy::abs(partial);
    small_run = (Policy::abs(term) <= tol * partial_abs) ? small_run + 1 : 0;
    const bool have_ratio = n > req.k_hi && !mags.back().is_zero();
    if (have_ratio) ratio = (a / mags.back()).to_double();
    terms.push_back(term);
    mags.push_back(a);

    const ScaledReal bound = ScaledReal::from_double(forcing.sup_from(n + 1)) * a * geometric;
    if (small_run >= 3 && have_ratio && ratio < rho && bound <= tol * partial_abs) {
      bound_rel = partial_abs.is_zero() ? 0.0 : (bound / partial_abs).to_double();
      break;
    }
  }

  out.last_index = n;
  out.precision_bits = policy.bits();
  out.truncation = {n - req.k_hi + 1, bound_rel, ratio};

  const ScaledReal w_abs = ScaledReal::from_double(std::abs(params.w()));
  const auto width = static_cast<std::size_t>(req.k_hi - req.k_lo + 1);
  out.weighted.resize(width);
  Num acc = policy.zero();
  ScaledReal abs_sum;
  double cond_log2 = -std::numeric_limits<double>::infinity();
  for (std::int64_t m = n; m >= req.k_lo; --m) {
    const auto i = static_cast<std::size_t>(m - req.k_lo);
    acc += terms[i];
    abs_sum += mags[i];
    if (m <= req.k_hi) {
      const Num& p = table.P(m);
      out.weighted[i] = Policy::to_scaled(p * acc);
      if (m == req.k_lo) out.tail_lo = Policy::to_scaled(acc);
      const ScaledReal cond = w_abs * Policy::abs(p) * abs_sum;
      if (!cond.is_zero()) cond_log2 = std::max(cond_log2, cond.log2());
    }
  }
  out.condition_log2 = std::isfinite(cond_log2) ? cond_log2 : 0.0;
  return out;
}

/// Sums in doubles and re-sums with MPFR when the condition number exceeds
/// kEscalationCondition. The forcing must return the same E_m on both passes.
template <class Forcing>
TailOutcome tails_with_escalation(const CayleyParams& params, Forcing& forcing,
                                  const TailRequest& req) {
  TailOutcome out = run_tails(DoublePolicy{}, params, forcing, req);
  if (out.condition_log2 <= std::log2(kEscalationCondition)) return out;
  const double extra = std::ceil(out.condition_log2) +
                       std::ceil(std::log2(static_cast<double>(out.last_index + 2)));
  const auto prec = static_cast<mpfr_prec_t>(64 + extra);
  return run_tails(BigPolicy{prec}, params, forcing, req);
}

}  // namespace qcayley::detail
