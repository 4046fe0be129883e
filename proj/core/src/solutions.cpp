#include "qcayley/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcayley/errors.hpp"

namespace qcayley {

PerturbationSpec PerturbationSpec::constant(double epsilon, Complex value) {
  PerturbationSpec s;
  s.kind = Kind::kConstant;
  s.epsilon = epsilon;
  s.value = value;
  return s;
}

PerturbationSpec PerturbationSpec::unit_phase_of_p(double epsilon) {
  PerturbationSpec s;
  s.kind = Kind::kUnitPhaseOfP;
  s.epsilon = epsilon;
  return s;
}

PerturbationSpec PerturbationSpec::random_phase(double epsilon, std::uint64_t seed) {
  PerturbationSpec s;
  s.kind = Kind::kRandomPhase;
  s.epsilon = epsilon;
  s.seed = seed;
  return s;
}

PerturbationSpec PerturbationSpec::custom(double epsilon, std::vector<Complex> table) {
  PerturbationSpec s;
  s.kind = Kind::kCustom;
  s.epsilon = epsilon;
  s.table = std::move(table);
  return s;
}

void PerturbationSpec::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InputError("epsilon must be positive and finite");
  }
  auto check = [this](Complex z, const std::string& where) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InputError(where + " is not finite");
    }
    if (std::abs(z) > epsilon) {
      throw InputError(where + " exceeds epsilon in modulus");
    }
  };
  if (kind == Kind::kConstant) check(value, "constant perturbation");
  if (kind == Kind::kCustom) {
    for (std::size_t m = 0; m < table.size(); ++m) {
      check(table[m], "perturbation at k = " + std::to_string(m));
    }
  }
}

double PerturbationSpec::sup_from(std::int64_t m) const {
  switch (kind) {
    case Kind::kConstant:
      return std::abs(value);
    case Kind::kUnitPhaseOfP:
    case Kind::kRandomPhase:
      return epsilon;
    case Kind::kCustom: {
      double best = 0.0;
      for (auto i = static_cast<std::size_t>(std::max<std::int64_t>(m, 0)); i < table.size(); ++i) {
        best = std::max(best, std::abs(table[i]));
      }
      return best;
    }
  }
  return epsilon;
}

std::string_view to_string(PerturbationSpec::Kind kind) noexcept {
  switch (kind) {
    case PerturbationSpec::Kind::kConstant: return "constant";
    case PerturbationSpec::Kind::kUnitPhaseOfP: return "unit-phase";
    case PerturbationSpec::Kind::kRandomPhase: return "random-phase";
    case PerturbationSpec::Kind::kCustom: return "custom";
  }
  return "unknown";
}

ForcingSequence::ForcingSequence(const CayleyParams& params, PerturbationSpec spec)
    : params_(params), spec_(std::move(spec)), rng_(spec_.seed) {
  spec_.validate();
}

Complex ForcingSequence::operator()(std::int64_t m) {
  if (m < 0) throw ParameterError("forcing index must be non-negative");
  extend_to(m);
  return values_[static_cast<std::size_t>(m)];
}

void ForcingSequence::extend_to(std::int64_t m) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  while (static_cast<std::int64_t>(values_.size()) <= m) {
    const auto j = static_cast<std::int64_t>(values_.size());
    switch (spec_.kind) {
      case PerturbationSpec::Kind::kConstant:
        values_.push_back(spec_.value);
        break;
      case PerturbationSpec::Kind::kUnitPhaseOfP:
        values_.push_back(spec_.epsilon * p_next_.phase());
        p_next_ *= step_ratio(params_, point(params_.q(), j));
        break;
      case PerturbationSpec::Kind::kRandomPhase:
        values_.push_back(std::polar(spec_.epsilon, angle(rng_)));
        break;
      case PerturbationSpec::Kind::kCustom:
        values_.push_back(static_cast<std::size_t>(j) < spec_.table.size()
                              ? spec_.table[static_cast<std::size_t>(j)]
                              : Complex{});
        break;
    }
  }
}

Trajectory product_solution(const CayleyParams& params, const LatticeWindow& window) {
  params.require_usable();
  if (window.q() != params.q()) throw ParameterError("window q differs from parameter q");
  std::vector<ScaledComplex> values;
  values.reserve(window.size());
  values.push_back(ScaledComplex::one());
  for (std::int64_t k = 0; k < window.k_max(); ++k) {
    values.push_back(values.back() * step_ratio(params, point(params.q(), k)));
  }
  return Trajectory(window, std::move(values));
}

Trajectory variation_sum(const CayleyParams& params, const LatticeWindow& window,
                         const Trajectory& forcing, const Trajectory& product) {
  params.require_usable();
  if (forcing.window() != window || product.window() != window) {
    throw ParameterError("forcing and product must live on the requested window");
  }
  const ScaledReal h = ScaledReal::from_double(params.q() - 1.0);
  std::vector<ScaledComplex> values;
  values.reserve(window.size());
  values.push_back(ScaledComplex::zero());
  for (std::int64_t m = 0; m < window.k_max(); ++m) {
    const LatticePoint pt = point(params.q(), m);
    const StepFactors f = step_factors(params, pt);
    const ScaledComplex gain = ScaledComplex::from_scaled_real(h * pt.t) / f.numerator;
    values.push_back(values.back() + gain * forcing[m] / product[m]);
  }
  return Trajectory(window, std::move(values));
}

SolutionBundle synthesize(const CayleyParams& params, const LatticeWindow& window,
                          const PerturbationSpec& spec, Complex c) {
  params.require_usable();
  ForcingSequence forcing(params, spec);
  std::vector<ScaledComplex> e;
  e.reserve(window.size());
  for (std::int64_t m = 0; m <= window.k_max(); ++m) {
    e.push_back(ScaledComplex::from_complex(forcing(m)));
  }
  Trajectory E(window, std::move(e));
  Trajectory P = product_solution(params, window);
  Trajectory S = variation_sum(params, window, E, P);

  const ScaledReal h = ScaledReal::from_double(params.q() - 1.0);
  std::vector<ScaledComplex> phi;
  phi.reserve(window.size());
  phi.push_back(ScaledComplex::from_complex(c));
  for (std::int64_t k = 0; k < window.k_max(); ++k) {
    const LatticePoint pt = point(params.q(), k);
    const StepFactors f = step_factors(params, pt);
    const ScaledComplex drive = ScaledComplex::from_scaled_real(h * pt.t) * E[k];
    phi.push_back((f.numerator * phi.back() + drive) / f.denominator);
  }
  return {std::move(P), std::move(S), Trajectory(window, std::move(phi)), std::move(E),
          ScaledComplex::from_complex(c), spec};
}

double bundle_identity_error(const SolutionBundle& bundle) {
  double worst = 0.0;
  const ScaledReal one = ScaledReal::from_double(1.0);
  for (std::size_t k = 0; k < bundle.phi.size(); ++k) {
    const auto i = static_cast<std::int64_t>(k);
    const ScaledComplex& p = bundle.P[i];
    const ScaledComplex model = p * bundle.S[i] + bundle.c * p;
    ScaledReal scale = std::max({one, bundle.phi[i].abs(), p.abs() * (bundle.S[i].abs() + bundle.c.abs())});
    worst = std::max(worst, ((bundle.phi[i] - model).abs() / scale).to_double());
  }
  return worst;
}

}  // namespace qcayley
