#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qcayley/cayley.hpp"
#include "qcayley/hus.hpp"

namespace qcayley {

/// Ranges for random (q, eta, w) draws. q is drawn from (q_min, q_max],
/// eta from [eta_min, eta_max], |w| from [w_abs_min, w_abs_max] and arg w
/// from [arg_min, arg_max).
struct ParameterGrid {
  double q_min = 1.0;
  double q_max = 3.0;
  double eta_min = 0.0;
  double eta_max = 0.45;
  double w_abs_min = 0.1;
  double w_abs_max = 10.0;
  double arg_min = 0.0;
  double arg_max = 2.0 * std::numbers::pi;

  /// Throws ParameterError for empty or out-of-domain ranges, including
  /// eta_max >= 1/2.
  void validate() const;
};

struct ParameterDraw {
  CayleyParams params;
  /// Forbidden draws rejected before this one was accepted.
  std::uint64_t resamples = 0;
};

/// Generator for draw number `index` of a run seeded with `seed`. Each draw
/// owns its generator so draws can run in any order.
std::mt19937_64 draw_generator(std::uint64_t seed, std::uint64_t index);

inline constexpr std::uint64_t kMaxResamples = 100000;

/// Draws until the coefficient is usable. Throws ParameterError after
/// kMaxResamples rejections.
ParameterDraw draw_valid_params(std::mt19937_64& rng, const ParameterGrid& grid);

struct SweepOptions {
  ParameterGrid grid;
  std::uint64_t draws = 0;
  std::uint64_t seed = 42;
  double epsilon = 0.1;
  std::int64_t k_max = kDefaultKMax;
  Complex c{};
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct SweepRow {
  std::uint64_t draw = 0;
  std::uint64_t resamples = 0;
  std::uint64_t forcing_seed = 0;
  HusReport report;
};

/// Certifies one RandomPhase bundle per draw. Rows come back in draw order
/// whatever the thread count. The first failing draw's error is rethrown.
std::vector<SweepRow> run_sweep(const SweepOptions& options);

/// max over rows of sup_deviation / bound; 0 for an empty sweep.
double max_bound_ratio(const std::vector<SweepRow>& rows);

}  // namespace qcayley
