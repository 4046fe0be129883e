#include "qcayley/hus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcayley/errors.hpp"
#include "series.hpp"

namespace qcayley {

namespace {

void require_stable_regime(const CayleyParams& params) {
  if (params.w() == Complex{}) throw NotApplicableError("w = 0 has no stability constant");
  if (params.is_half()) throw NotApplicableError("eta = 1/2 is not Hyers-Ulam stable");
  params.require_usable();
}

/// Adapts ForcingSequence to the series engine.
struct SpecForcing {
  ForcingSequence seq;
  Complex operator()(std::int64_t m) { return seq(m); }
  double sup_from(std::int64_t m) const { return seq.spec().sup_from(m); }
};

double to_condition(double log2_value) {
  return std::exp2(log2_value);
}

/// Tails T_k of the bundle's forcing for k = 0..k_max; weighted[k] = P_k T_k
/// equals x0 P_k - phi_k.
detail::TailOutcome bundle_tails(const CayleyParams& params, const SolutionBundle& bundle) {
  SpecForcing forcing{ForcingSequence(params, bundle.spec)};
  for (std::int64_t m = 0; m <= bundle.E.window().k_max(); ++m) {
    if (ScaledComplex::from_complex(forcing(m)) != bundle.E[m]) {
      throw InputError("bundle forcing does not match its perturbation spec at k = " +
                       std::to_string(m));
    }
  }
  detail::TailRequest req;
  req.k_hi = bundle.phi.window().k_max();
  return detail::tails_with_escalation(params, forcing, req);
}

void check_premise(const CayleyParams& params, const SolutionBundle& bundle, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("epsilon must be positive and finite");
  }
  const auto& window = bundle.phi.window();
  const double limit = epsilon * (1.0 + 1e-12);
  for (std::int64_t k = 0; k <= window.k_max(); ++k) {
    if (bundle.E[k].abs().to_double() > limit) {
      throw InputError("|E| exceeds epsilon at k = " + std::to_string(k));
    }
  }
  if (window.k_max() < 1) return;
  const Trajectory res = residual(params, bundle.phi);
  const std::vector<ScaledReal> scale = residual_scale(params, bundle.phi);
  for (std::int64_t k = 0; k < window.k_max(); ++k) {
    const double slack = 1e-10 * scale[static_cast<std::size_t>(k)].to_double();
    if (res[k].abs().to_double() > limit + slack) {
      throw InputError("residual of phi exceeds epsilon at k = " + std::to_string(k));
    }
  }
}

}  // namespace

double majorant_ratio(double eta) {
  return (eta / (1.0 - eta) + 1.0) / 2.0;
}

TailSum tail_sum_psi(const CayleyParams& params, std::int64_t k) {
  require_stable_regime(params);
  if (k < 0) throw ParameterError("k must be non-negative");
  detail::UnitForcing forcing;
  const detail::TailOutcome out = detail::tails_with_escalation(params, forcing, {k, k});
  return {out.weighted.front(), out.truncation, to_condition(out.condition_log2),
          out.precision_bits};
}

std::vector<double> term_ratio_profile(const CayleyParams& params, const LatticeWindow& window) {
  require_stable_regime(params);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(window.k_max()));
  const ScaledReal q = ScaledReal::from_double(params.q());
  StepFactors cur = step_factors(params, point(params.q(), 0));
  for (std::int64_t m = 0; m < window.k_max(); ++m) {
    const StepFactors next = step_factors(params, point(params.q(), m + 1));
    out.push_back((q * cur.denominator.abs() / next.numerator.abs()).to_double());
    cur = next;
  }
  return out;
}

std::optional<std::int64_t> ratio_burn_in(const std::vector<double>& profile, double target,
                                          double tolerance) {
  std::optional<std::int64_t> start;
  for (std::size_t m = profile.size(); m-- > 0;) {
    if (!(std::abs(profile[m] - target) < tolerance)) break;
    start = static_cast<std::int64_t>(m);
  }
  return start;
}

ShadowEstimate extract_shadow(const CayleyParams& params, const SolutionBundle& bundle) {
  require_stable_regime(params);
  SpecForcing forcing{ForcingSequence(params, bundle.spec)};
  const detail::TailOutcome out = detail::tails_with_escalation(params, forcing, {0, 0});
  return {bundle.c + out.tail_lo, out.truncation, to_condition(out.condition_log2),
          out.precision_bits};
}

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::kBoundHolds: return "BoundHolds";
    case Verdict::kBoundViolated: return "BoundViolated";
    case Verdict::kNotApplicable: return "NotApplicable";
  }
  return "unknown";
}

HusReport certify(const CayleyParams& params, const SolutionBundle& bundle, double epsilon) {
  HusReport report(params, epsilon);
  if (params.w() == Complex{} || params.is_half()) {
    report.bound = std::numeric_limits<double>::infinity();
    report.verdict = Verdict::kNotApplicable;
    return report;
  }
  params.require_usable();
  check_premise(params, bundle, epsilon);
  report.bound = epsilon / std::abs(params.w());

  const detail::TailOutcome tails = bundle_tails(params, bundle);
  report.x0 = bundle.c + tails.tail_lo;
  report.truncation = tails.truncation;
  report.condition = to_condition(tails.condition_log2);
  report.precision_bits = tails.precision_bits;
  report.majorant_bound = report.bound * report.condition;

  const ScaledReal bound = ScaledReal::from_double(report.bound);
  const ScaledReal direct_limit = bound * ScaledReal::from_double(1e6);
  ScaledReal sup;
  for (std::size_t k = 0; k < tails.weighted.size(); ++k) {
    const auto i = static_cast<std::int64_t>(k);
    const ScaledReal dev = tails.weighted[k].abs();
    if (dev > sup) {
      sup = dev;
      report.sup_index = i;
    }
    const ScaledComplex shadow = report.x0 * bundle.P[i];
    if (bundle.phi[i].abs() <= direct_limit && shadow.abs() <= direct_limit) {
      const ScaledComplex direct = bundle.phi[i] - shadow;
      const double gap = ((direct + tails.weighted[k]).abs() / bound).to_double();
      report.route_discrepancy = std::max(report.route_discrepancy, gap);
    }
  }
  report.sup_deviation = sup.to_double();

  detail::UnitForcing unit;
  const std::int64_t probe_hi = std::min(bundle.phi.window().k_max(), kIdentityProbeMax);
  const detail::TailOutcome psi = detail::tails_with_escalation(params, unit, {0, probe_hi});
  const ScaledComplex w = ScaledComplex::from_complex(params.w());
  for (const ScaledComplex& value : psi.weighted) {
    report.identity_error =
        std::max(report.identity_error, (w * value - ScaledComplex::one()).abs().to_double());
  }

  report.verdict = report.sup_deviation <= report.bound * (1.0 + kBoundSlack)
                       ? Verdict::kBoundHolds
                       : Verdict::kBoundViolated;
  return report;
}

UniquenessEvidence uniqueness_probe(const CayleyParams& params, const SolutionBundle& bundle,
                                    double epsilon, Complex delta) {
  if (delta == Complex{}) throw ParameterError("delta must be non-zero");
  require_stable_regime(params);
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  UniquenessEvidence out;
  out.delta = ScaledComplex::from_complex(delta);
  out.threshold = 2.0 * epsilon / std::abs(params.w());
  const ScaledReal threshold = ScaledReal::from_double(out.threshold);
  const detail::TailOutcome tails = bundle_tails(params, bundle);
  for (std::size_t k = 0; k < tails.weighted.size(); ++k) {
    const auto i = static_cast<std::int64_t>(k);
    // phi - (x0 + delta) P = -(P T) - delta P
    const ScaledReal gap = (-tails.weighted[k] - out.delta * bundle.P[i]).abs();
    if (gap > threshold) {
      out.violation_index = i;
      out.deviation_at_violation = gap.to_double();
      break;
    }
  }
  return out;
}

SolutionBundle synthesize_anchored(const CayleyParams& params, const LatticeWindow& window,
                                   const PerturbationSpec& spec, Complex x0) {
  require_stable_regime(params);
  SpecForcing forcing{ForcingSequence(params, spec)};
  detail::TailRequest req;
  req.k_hi = window.k_max();
  const detail::TailOutcome tails = detail::tails_with_escalation(params, forcing, req);

  std::vector<ScaledComplex> e;
  e.reserve(window.size());
  for (std::int64_t m = 0; m <= window.k_max(); ++m) {
    e.push_back(ScaledComplex::from_complex(forcing(m)));
  }
  Trajectory E(window, std::move(e));
  Trajectory P = product_solution(params, window);
  Trajectory S = variation_sum(params, window, E, P);
  const ScaledComplex anchor = ScaledComplex::from_complex(x0);
  std::vector<ScaledComplex> phi;
  phi.reserve(window.size());
  for (std::size_t k = 0; k < window.size(); ++k) {
    phi.push_back(anchor * P[static_cast<std::int64_t>(k)] - tails.weighted[k]);
  }
  const ScaledComplex c = anchor - tails.tail_lo;
  return {std::move(P), std::move(S), Trajectory(window, std::move(phi)), std::move(E), c, spec};
}

}  // namespace qcayley
