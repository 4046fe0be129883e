#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "qcayley/lattice.hpp"
#include "qcayley/scaled_complex.hpp"

namespace qcayley {

/// Which family of excluded coefficients a value of w falls near.
///  - kNumerator:   w = -1 / ((1 - eta)(q - 1) q^k), where 1 + w(1-eta)(q-1)t vanishes
///  - kDenominator: w =  1 / (eta (q - 1) q^k),      where 1 - w eta (q-1)t vanishes
enum class ForbiddenBranch { kNone, kNumerator, kDenominator };

struct Validity {
  enum class Kind { kValid, kForbidden, kNearSingular };

  Kind kind = Kind::kValid;
  std::int64_t k = -1;
  ForbiddenBranch branch = ForbiddenBranch::kNone;
  /// |w - w_k| / |w_k| for the closest excluded value w_k that was examined.
  double relative_distance = std::numeric_limits<double>::infinity();

  bool usable() const noexcept { return kind != Kind::kForbidden; }
};

inline constexpr double kForbiddenTolerance = 1e-12;
inline constexpr double kNearSingularTolerance = 1e-6;

std::string_view to_string(Validity::Kind kind) noexcept;
std::string_view to_string(ForbiddenBranch branch) noexcept;

/// Classifies w against the excluded coefficient set for (q, eta).
/// Throws ParameterError for q <= 1, eta outside [0, 1/2], or non-finite w.
Validity validate(double q, double eta, Complex w);

/// The triple (q, eta, w) together with its validity status. Construction
/// never fails for a forbidden w; operations that need the recurrence check
/// `validity()` themselves.
class CayleyParams {
 public:
  CayleyParams(double q, double eta, Complex w);

  double q() const noexcept { return q_; }
  double eta() const noexcept { return eta_; }
  Complex w() const noexcept { return w_; }
  const Validity& validity() const noexcept { return validity_; }

  bool is_half() const noexcept { return eta_ == 0.5; }
  /// Throws ForbiddenCoefficientError if w is excluded.
  void require_usable() const;

 private:
  double q_;
  double eta_;
  Complex w_;
  Validity validity_;
};

/// Numerator 1 + w(1-eta)(q-1)t and denominator 1 - w eta (q-1)t of the step
/// ratio at a lattice point.
struct StepFactors {
  ScaledComplex numerator;
  ScaledComplex denominator;
};

/// Throws ForbiddenCoefficientError for excluded w.
StepFactors step_factors(const CayleyParams& params, const LatticePoint& t);

/// r(t) = x(qt) / x(t) for solutions of the homogeneous equation.
ScaledComplex step_ratio(const CayleyParams& params, const LatticePoint& t);

/// Values of a lattice function on k = 0..k_max.
class Trajectory {
 public:
  /// Throws ParameterError unless values.size() == window.k_max() + 1.
  Trajectory(LatticeWindow window, std::vector<ScaledComplex> values);

  static Trajectory constant(const LatticeWindow& window, const ScaledComplex& value);

  const LatticeWindow& window() const noexcept { return window_; }
  const std::vector<ScaledComplex>& values() const noexcept { return values_; }
  const ScaledComplex& operator[](std::int64_t k) const { return values_.at(static_cast<std::size_t>(k)); }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  LatticeWindow window_;
  std::vector<ScaledComplex> values_;
};

/// (x(q^{k+1}) - x(q^k)) / ((q - 1) q^k). Throws ParameterError at the window edge.
ScaledComplex jackson_derivative(const Trajectory& traj, std::int64_t k);

/// eta x(q^{k+1}) + (1 - eta) x(q^k). Throws ParameterError at the window edge.
ScaledComplex cayley_average(const Trajectory& traj, double eta, std::int64_t k);

/// E(q^k) = D_q x - w <x>_eta for k = 0..k_max-1; the result lives on a window
/// one shorter than the input. Needs at least two values.
Trajectory residual(const CayleyParams& params, const Trajectory& traj);

/// Magnitude of the terms combined by `residual` at each k:
/// (|x_{k+1}| + |x_k|) / ((q-1) q^k) + |w| (eta |x_{k+1}| + (1-eta) |x_k|).
/// Rounding error of the residual is proportional to this.
std::vector<ScaledReal> residual_scale(const CayleyParams& params, const Trajectory& traj);

/// max_k |residual_k - expected_k| / max(|expected_k|, scale_k) over k < k_max.
/// `expected` must cover at least k_max points.
double residual_mismatch(const CayleyParams& params, const Trajectory& traj,
                         const Trajectory& expected);

}  // namespace qcayley
