#include "qcayley/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcayley/errors.hpp"

namespace qcayley {
namespace {

// The scan examines indices within this distance of the analytic crossing
// index; only those can lie within relative 1e-6 of |w| unless q is extremely
// close to 1, in which case the closest one is still among them.
constexpr std::int64_t kScanRadius = 2;
constexpr double kMaxScanIndex = 1e17;

struct Candidate {
  std::int64_t k = -1;
  double distance = std::numeric_limits<double>::infinity();
};

// Excluded values have the form sign / (c q^k) with c > 0.
Candidate closest_excluded(double q, double c, double sign, Complex w) {
  Candidate best;
  const double wabs = std::abs(w);
  const double k_star = std::log(1.0 / (wabs * c)) / std::log(q);
  if (!std::isfinite(k_star) || k_star > kMaxScanIndex) return best;
  const auto lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(k_star)) - kScanRadius);
  const auto hi = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(k_star)) + kScanRadius);
  const ScaledComplex sw = ScaledComplex::from_complex(w);
  for (std::int64_t k = lo; k <= hi; ++k) {
    ScaledComplex excluded = ScaledComplex::from_real(sign) /
                             ScaledComplex::from_scaled_real(ScaledReal::from_double(c) * lattice_value(q, k));
    const double d = ((sw - excluded).abs() / excluded.abs()).to_double();
    if (d < best.distance) best = {k, d};
  }
  return best;
}

void check_window_edge(const Trajectory& traj, std::int64_t k) {
  if (k < 0 || k + 1 > traj.window().k_max()) {
    throw ParameterError("lattice index " + std::to_string(k) + " has no successor in the window");
  }
}

ScaledReal step_size(double q, std::int64_t k) {
  return ScaledReal::from_double(q - 1.0) * lattice_value(q, k);
}

}  // namespace

std::string_view to_string(Validity::Kind kind) noexcept {
  switch (kind) {
    case Validity::Kind::kValid: return "Valid";
    case Validity::Kind::kForbidden: return "Forbidden";
    case Validity::Kind::kNearSingular: return "NearSingular";
  }
  return "Unknown";
}

std::string_view to_string(ForbiddenBranch branch) noexcept {
  switch (branch) {
    case ForbiddenBranch::kNone: return "none";
    case ForbiddenBranch::kNumerator: return "numerator";
    case ForbiddenBranch::kDenominator: return "denominator";
  }
  return "unknown";
}

Validity validate(double q, double eta, Complex w) {
  if (!std::isfinite(q) || !(q > 1.0)) throw ParameterError("q must satisfy q > 1");
  if (!std::isfinite(eta) || eta < 0.0 || eta > 0.5) {
    throw ParameterError("eta must lie in [0, 1/2]");
  }
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw ParameterError("w must be finite");
  }
  Validity v;
  if (w == Complex{}) return v;

  Candidate num = closest_excluded(q, (1.0 - eta) * (q - 1.0), -1.0, w);
  Candidate den;
  if (eta > 0.0) den = closest_excluded(q, eta * (q - 1.0), 1.0, w);

  const bool use_num = num.distance <= den.distance;
  const Candidate& best = use_num ? num : den;
  v.relative_distance = best.distance;
  if (best.distance <= kNearSingularTolerance) {
    v.kind = best.distance <= kForbiddenTolerance ? Validity::Kind::kForbidden
                                                   : Validity::Kind::kNearSingular;
    v.k = best.k;
    v.branch = use_num ? ForbiddenBranch::kNumerator : ForbiddenBranch::kDenominator;
  }
  return v;
}

CayleyParams::CayleyParams(double q, double eta, Complex w)
    : q_(q), eta_(eta), w_(w), validity_(validate(q, eta, w)) {}

void CayleyParams::require_usable() const {
  if (!validity_.usable()) {
    throw ForbiddenCoefficientError(
        "w is in the excluded set (" + std::string(to_string(validity_.branch)) +
            " branch, k = " + std::to_string(validity_.k) + ")",
        validity_.k);
  }
}

StepFactors step_factors(const CayleyParams& params, const LatticePoint& t) {
  params.require_usable();
  const double h = params.q() - 1.0;
  const Complex a = params.w() * ((1.0 - params.eta()) * h);
  const Complex b = params.w() * (params.eta() * h);
  const ScaledComplex one = ScaledComplex::one();
  return {one + ScaledComplex::from_complex(a) * t.t,
          one - ScaledComplex::from_complex(b) * t.t};
}

ScaledComplex step_ratio(const CayleyParams& params, const LatticePoint& t) {
  const StepFactors f = step_factors(params, t);
  return f.numerator / f.denominator;
}

Trajectory::Trajectory(LatticeWindow window, std::vector<ScaledComplex> values)
    : window_(window), values_(std::move(values)) {
  if (values_.size() != window_.size()) {
    throw ParameterError("trajectory length " + std::to_string(values_.size()) +
                         " does not match window size " + std::to_string(window_.size()));
  }
}

Trajectory Trajectory::constant(const LatticeWindow& window, const ScaledComplex& value) {
  return Trajectory(window, std::vector<ScaledComplex>(window.size(), value));
}

ScaledComplex jackson_derivative(const Trajectory& traj, std::int64_t k) {
  check_window_edge(traj, k);
  const ScaledComplex diff = traj[k + 1] - traj[k];
  return diff / ScaledComplex::from_scaled_real(step_size(traj.window().q(), k));
}

ScaledComplex cayley_average(const Trajectory& traj, double eta, std::int64_t k) {
  check_window_edge(traj, k);
  return traj[k + 1] * Complex(eta, 0.0) + traj[k] * Complex(1.0 - eta, 0.0);
}

Trajectory residual(const CayleyParams& params, const Trajectory& traj) {
  const auto& window = traj.window();
  if (window.k_max() < 1) throw ParameterError("residual needs at least two lattice values");
  std::vector<ScaledComplex> out;
  out.reserve(static_cast<std::size_t>(window.k_max()));
  const ScaledComplex w = ScaledComplex::from_complex(params.w());
  for (std::int64_t k = 0; k < window.k_max(); ++k) {
    out.push_back(jackson_derivative(traj, k) - w * cayley_average(traj, params.eta(), k));
  }
  return Trajectory(LatticeWindow(window.q(), window.k_max() - 1), std::move(out));
}

std::vector<ScaledReal> residual_scale(const CayleyParams& params, const Trajectory& traj) {
  const auto& window = traj.window();
  std::vector<ScaledReal> out;
  const ScaledReal wabs = ScaledReal::from_double(std::abs(params.w()));
  const ScaledReal eta = ScaledReal::from_double(params.eta());
  const ScaledReal one_minus_eta = ScaledReal::from_double(1.0 - params.eta());
  for (std::int64_t k = 0; k < window.k_max(); ++k) {
    const ScaledReal next = traj[k + 1].abs();
    const ScaledReal cur = traj[k].abs();
    out.push_back((next + cur) / step_size(window.q(), k) +
                  wabs * (eta * next + one_minus_eta * cur));
  }
  return out;
}

double residual_mismatch(const CayleyParams& params, const Trajectory& traj,
                         const Trajectory& expected) {
  const Trajectory res = residual(params, traj);
  if (static_cast<std::int64_t>(expected.size()) < traj.window().k_max()) {
    throw ParameterError("expected residual is shorter than the trajectory window");
  }
  const std::vector<ScaledReal> scale = residual_scale(params, traj);
  double worst = 0.0;
  for (std::int64_t k = 0; k < traj.window().k_max(); ++k) {
    const auto idx = static_cast<std::size_t>(k);
    ScaledReal denom = expected[k].abs();
    if (denom < scale[idx]) denom = scale[idx];
    if (denom.is_zero()) continue;
    worst = std::max(worst, ((res[k] - expected[k]).abs() / denom).to_double());
  }
  return worst;
}

}  // namespace qcayley
