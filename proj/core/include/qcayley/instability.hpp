#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcayley/cayley.hpp"
#include "qcayley/lattice.hpp"
#include "qcayley/scaled_complex.hpp"

namespace qcayley {

inline constexpr double kCycleTolerance = 1e-7;

struct TwoCycleResult {
  /// Representative of {p*, -p*} with non-negative real part (imaginary part
  /// breaks ties when the real part is within 1e-12 of zero).
  Complex p_star;
  /// P at the even index of the accepting pair, before sign canonicalization.
  Complex p_star_even;
  /// Index at which the second consecutive confirmation happened.
  std::int64_t converged_at = 0;
  /// |P[k+2] - P[k]| / |P[k]| at acceptance.
  double cycle_residual = 0.0;
  /// |P[k+1] + P[k]| / |P[k]| at acceptance.
  double alternation_residual = 0.0;
};

/// Follows P at eta = 1/2 until |P[k+2] - P[k]| < 1e-7 |P[k]| holds for two
/// consecutive k. Throws ParameterError unless eta = 1/2 and w != 0,
/// ForbiddenCoefficientError for excluded w, ConvergenceError if the window
/// ends first.
TwoCycleResult two_cycle(const CayleyParams& params, const LatticeWindow& window);

/// Sign representative with non-negative real part.
Complex canonical_sign(Complex p);

struct DivergenceRow {
  std::int64_t k = 0;
  ScaledReal p_abs;
  ScaledReal s_abs;
  ScaledReal deviation;
};

struct Crossing {
  double multiple = 0.0;
  std::optional<std::int64_t> index;
};

inline constexpr std::array<double, 3> kCrossingMultiples{10.0, 100.0, 1000.0};

struct DivergenceEvidence {
  Complex c_tested;
  double epsilon = 0.0;
  std::vector<Crossing> crossings;
  /// Largest deviation seen on the window; useful when a multiple is not reached.
  ScaledReal max_deviation;
  std::vector<DivergenceRow> profile;
};

/// With E = eps P / |P|, records |P| |S - c| on the window and its first
/// crossings of 10, 100 and 1000. Needs eta = 1/2; w = 0 is allowed.
DivergenceEvidence eta_half_S_divergence(const CayleyParams& params, const LatticeWindow& window,
                                         double epsilon, Complex c);

/// w = 0 with E = eps: deviation |S(q^n) - c| = |eps (q^n - 1) - c|.
/// Needs eta < 1/2.
DivergenceEvidence w_zero_divergence(double q, double eta, const LatticeWindow& window,
                                     double epsilon, Complex c);

}  // namespace qcayley
