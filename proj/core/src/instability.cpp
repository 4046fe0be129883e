#include "qcayley/instability.hpp"

#include <cmath>
#include <string>

#include "qcayley/errors.hpp"
#include "qcayley/solutions.hpp"

namespace qcayley {

namespace {

DivergenceEvidence divergence(const CayleyParams& params, const LatticeWindow& window,
                              double epsilon, Complex c) {
  const PerturbationSpec spec = PerturbationSpec::unit_phase_of_p(epsilon);
  spec.validate();
  ForcingSequence forcing(params, spec);
  std::vector<ScaledComplex> e;
  e.reserve(window.size());
  for (std::int64_t m = 0; m <= window.k_max(); ++m) {
    e.push_back(ScaledComplex::from_complex(forcing(m)));
  }
  const Trajectory E(window, std::move(e));
  const Trajectory P = product_solution(params, window);
  const Trajectory S = variation_sum(params, window, E, P);

  DivergenceEvidence out;
  out.c_tested = c;
  out.epsilon = epsilon;
  for (double m : kCrossingMultiples) out.crossings.push_back({m, std::nullopt});
  const ScaledComplex shift = ScaledComplex::from_complex(c);
  for (std::int64_t k = 0; k <= window.k_max(); ++k) {
    DivergenceRow row{k, P[k].abs(), S[k].abs(), ScaledReal{}};
    row.deviation = row.p_abs * (S[k] - shift).abs();
    if (row.deviation > out.max_deviation) out.max_deviation = row.deviation;
    for (Crossing& x : out.crossings) {
      if (!x.index && row.deviation > ScaledReal::from_double(x.multiple)) x.index = k;
    }
    out.profile.push_back(row);
  }
  return out;
}

}  // namespace

Complex canonical_sign(Complex p) {
  if (std::abs(p.real()) <= 1e-12) return p.imag() < 0.0 ? -p : p;
  return p.real() < 0.0 ? -p : p;
}

TwoCycleResult two_cycle(const CayleyParams& params, const LatticeWindow& window) {
  if (!params.is_half()) throw ParameterError("two_cycle needs eta = 1/2");
  if (params.w() == Complex{}) throw ParameterError("two_cycle needs w != 0");
  const Trajectory P = product_solution(params, window);

  int confirmations = 0;
  for (std::int64_t k = 0; k + 2 <= window.k_max(); ++k) {
    const ScaledReal base = P[k].abs();
    const double cycle = ((P[k + 2] - P[k]).abs() / base).to_double();
    confirmations = cycle < kCycleTolerance ? confirmations + 1 : 0;
    if (confirmations < 2) continue;
    const std::int64_t even = (k % 2 == 0) ? k : k - 1;
    const auto p_even = P[even].to_float();
    if (p_even.overflow) throw ConvergenceError("two-cycle value is outside double range");
    TwoCycleResult out;
    out.p_star_even = p_even.value;
    out.p_star = canonical_sign(p_even.value);
    out.converged_at = k;
    out.cycle_residual = cycle;
    out.alternation_residual = ((P[k + 1] + P[k]).abs() / base).to_double();
    return out;
  }
  const std::int64_t last = window.k_max();
  throw ConvergenceError("no two-cycle within k_max = " + std::to_string(last) +
                         "; last |P| = " + std::to_string(P[last].abs().to_double()));
}

DivergenceEvidence eta_half_S_divergence(const CayleyParams& params, const LatticeWindow& window,
                                         double epsilon, Complex c) {
  if (!params.is_half()) throw ParameterError("eta_half_S_divergence needs eta = 1/2");
  return divergence(params, window, epsilon, c);
}

DivergenceEvidence w_zero_divergence(double q, double eta, const LatticeWindow& window,
                                     double epsilon, Complex c) {
  if (!(eta < 0.5)) throw ParameterError("w_zero_divergence needs eta < 1/2");
  return divergence(CayleyParams(q, eta, Complex{}), window, epsilon, c);
}

}  // namespace qcayley
