#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qcayley/cayley.hpp"
#include "qcayley/lattice.hpp"
#include "qcayley/scaled_complex.hpp"
#include "qcayley/solutions.hpp"

namespace qcayley {

/// Relative tolerance of the series truncation rule.
inline constexpr double kTailTolerance = 1e-12;
/// Hard cap on the number of terms summed past the starting index.
inline constexpr std::int64_t kTailTermCap = 10000;
/// Above this condition number the tail series is re-summed in MPFR.
inline constexpr double kEscalationCondition = 32.0;
/// Slack allowed on sup_deviation <= eps / |w| before the bound counts as violated.
inline constexpr double kBoundSlack = 1e-9;
/// certify samples the tail-sum identity at k <= this index.
inline constexpr std::int64_t kIdentityProbeMax = 32;

struct TruncationInfo {
  /// Terms summed from the starting index of the truncated series.
  std::int64_t terms_used = 0;
  /// Geometric bound on the discarded tail, relative to the partial sum.
  double tail_bound = 0.0;
  /// Ratio a_{n}/a_{n-1} of the last unit-forcing magnitudes.
  double last_ratio = 0.0;
};

/// Geometric majorant ratio (eta/(1-eta) + 1) / 2 used by the truncation rule.
double majorant_ratio(double eta);

/// psi(q^k) = P(q^k) sum_{m >= k} (q-1) q^m / ([1 + w(1-eta)(q-1)q^m] P(q^m)).
struct TailSum {
  ScaledComplex value;
  TruncationInfo truncation;
  /// |w| |P_k| sum_{m >= k} |term_m|: amplification of rounding in the sum.
  double condition = 1.0;
  /// 53 for plain doubles, otherwise the MPFR precision used.
  int precision_bits = 53;
};

/// Throws NotApplicableError for w = 0 or eta = 1/2, TruncationError when the
/// cap is exceeded, ForbiddenCoefficientError for excluded w.
TailSum tail_sum_psi(const CayleyParams& params, std::int64_t k);

/// a_{m+1} / a_m for m = 0..k_max-1 with a_m = |(q-1) q^m / ([1 + w(1-eta)(q-1)q^m] P(q^m))|.
std::vector<double> term_ratio_profile(const CayleyParams& params, const LatticeWindow& window);

/// First index from which every remaining ratio is within `tolerance` of
/// `target`; nullopt if the profile never settles.
std::optional<std::int64_t> ratio_burn_in(const std::vector<double>& profile, double target,
                                          double tolerance);

struct ShadowEstimate {
  /// x0 = lim phi / P = c + lim S.
  ScaledComplex x0;
  TruncationInfo truncation;
  double condition = 1.0;
  int precision_bits = 53;
};

ShadowEstimate extract_shadow(const CayleyParams& params, const SolutionBundle& bundle);

enum class Verdict { kBoundHolds, kBoundViolated, kNotApplicable };
std::string_view to_string(Verdict verdict) noexcept;

struct HusReport {
  HusReport(const CayleyParams& p, double eps) : params(p), epsilon(eps) {}

  CayleyParams params;
  double epsilon = 0.0;
  ScaledComplex x0;
  /// max_{k <= k_max} |phi_k - x0 P_k|, evaluated as |P_k sum_{m >= k} term_m|.
  double sup_deviation = 0.0;
  std::int64_t sup_index = 0;
  /// eps / |w|; +inf when not applicable.
  double bound = 0.0;
  /// max_{k <= min(k_max, 32)} |w psi(q^k) - 1|.
  double identity_error = 0.0;
  /// eps max_k |P_k| sum_{m >= k} a_m: the triangle-inequality bound on the
  /// deviation, which is what every bundle with |E| <= eps actually obeys.
  double majorant_bound = 0.0;
  Verdict verdict = Verdict::kNotApplicable;
  TruncationInfo truncation;
  /// max_k |w| |P_k| sum_{m >= k} a_m = majorant_bound / bound.
  double condition = 1.0;
  int precision_bits = 53;
  /// Largest |(phi_k - x0 P_k) - deviation_k| / bound over indices where the
  /// direct subtraction is well conditioned; -1 when no index qualifies.
  double route_discrepancy = -1.0;
};

/// Checks the deviation of a perturbed trajectory from its shadowing solution
/// x0 P against eps / |w|. Returns a kNotApplicable report for w = 0 or
/// eta = 1/2. Throws InputError if the bundle's residual exceeds eps.
HusReport certify(const CayleyParams& params, const SolutionBundle& bundle, double epsilon);

struct UniquenessEvidence {
  ScaledComplex delta;
  /// 2 eps / |w|.
  double threshold = 0.0;
  /// First k with |phi_k - (x0 + delta) P_k| > threshold.
  std::optional<std::int64_t> violation_index;
  double deviation_at_violation = 0.0;
};

/// Throws ParameterError for delta = 0, NotApplicableError for w = 0 or eta = 1/2.
UniquenessEvidence uniqueness_probe(const CayleyParams& params, const SolutionBundle& bundle,
                                    double epsilon, Complex delta);

/// Builds the bundle whose shadowing coefficient is x0:
///   phi_k = x0 P_k - P_k sum_{m >= k} term_m,   c = phi_0.
/// Unlike `synthesize`, this stays accurate when phi is bounded (x0 = 0).
SolutionBundle synthesize_anchored(const CayleyParams& params, const LatticeWindow& window,
                                   const PerturbationSpec& spec, Complex x0);

}  // namespace qcayley
