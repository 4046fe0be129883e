#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qcayley/cayley.hpp"
#include "qcayley/lattice.hpp"
#include "qcayley/scaled_complex.hpp"

namespace qcayley {

/// Describes a perturbation E with |E(t)| <= epsilon on the whole lattice.
struct PerturbationSpec {
  enum class Kind {
    kConstant,     // E = value, |value| <= epsilon
    kUnitPhaseOfP, // E = epsilon P / |P|
    kRandomPhase,  // E(q^m) = epsilon e^{i theta_m}, theta_m uniform in [0, 2 pi)
    kCustom,       // tabulated values, |E| <= epsilon; zero past the table
  };

  Kind kind = Kind::kConstant;
  double epsilon = 0.0;
  Complex value{};
  std::uint64_t seed = 0;
  std::vector<Complex> table;

  static PerturbationSpec constant(double epsilon, Complex value);
  static PerturbationSpec unit_phase_of_p(double epsilon);
  static PerturbationSpec random_phase(double epsilon, std::uint64_t seed);
  static PerturbationSpec custom(double epsilon, std::vector<Complex> table);

  /// Throws InputError if epsilon <= 0 or a value exceeds epsilon in modulus.
  void validate() const;

  /// sup_{m' >= m} |E(q^m')| as implied by the spec (not by sampling).
  double sup_from(std::int64_t m) const;
};

std::string_view to_string(PerturbationSpec::Kind kind) noexcept;

/// Generates E(q^m) for any m, caching the values in index order so that the
/// sequence is reproducible regardless of how far it is extended.
class ForcingSequence {
 public:
  ForcingSequence(const CayleyParams& params, PerturbationSpec spec);

  Complex operator()(std::int64_t m);
  const PerturbationSpec& spec() const noexcept { return spec_; }

 private:
  void extend_to(std::int64_t m);

  CayleyParams params_;
  PerturbationSpec spec_;
  std::mt19937_64 rng_;
  std::vector<Complex> values_;
  ScaledComplex p_next_ = ScaledComplex::one();
};

/// P(q^n) = prod_{k<n} r(q^k), P(1) = 1. Throws ForbiddenCoefficientError.
Trajectory product_solution(const CayleyParams& params, const LatticeWindow& window);

/// S[0] = 0, S[n] = sum_{m<n} (q-1) q^m E(q^m) / ([1 + w(1-eta)(q-1)q^m] P(q^m)).
Trajectory variation_sum(const CayleyParams& params, const LatticeWindow& window,
                         const Trajectory& forcing, const Trajectory& product);

/// A perturbed trajectory phi together with the pieces of phi = P S + c P.
struct SolutionBundle {
  Trajectory P;
  Trajectory S;
  Trajectory phi;
  Trajectory E;
  ScaledComplex c;
  PerturbationSpec spec;
};

/// Builds phi from phi(1) = c with the forward non-homogeneous recurrence
///   phi(qt) = r(t) phi(t) + (q-1) t E(t) / (1 - w eta (q-1) t).
/// Throws ForbiddenCoefficientError or InputError (malformed spec).
SolutionBundle synthesize(const CayleyParams& params, const LatticeWindow& window,
                          const PerturbationSpec& spec, Complex c);

/// max_k |phi_k - (P_k S_k + c P_k)| / max(1, |phi_k|, |P_k| (|S_k| + |c|)).
double bundle_identity_error(const SolutionBundle& bundle);

}  // namespace qcayley
