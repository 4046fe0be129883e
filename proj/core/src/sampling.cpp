#include "qcayley/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <string>
#include <thread>

#include "qcayley/errors.hpp"
#include "qcayley/solutions.hpp"

namespace qcayley {

void ParameterGrid::validate() const {
  auto ordered = [](double lo, double hi) { return std::isfinite(lo) && std::isfinite(hi) && lo <= hi; };
  if (!ordered(q_min, q_max) || !(q_min >= 1.0) || !(q_max > 1.0) || q_min == q_max) {
    throw ParameterError("q range must satisfy 1 <= q_min < q_max");
  }
  if (!ordered(eta_min, eta_max) || eta_min < 0.0 || !(eta_max < 0.5)) {
    throw ParameterError("eta range must lie in [0, 1/2)");
  }
  if (!ordered(w_abs_min, w_abs_max) || !(w_abs_min > 0.0)) {
    throw ParameterError("|w| range must satisfy 0 < min <= max");
  }
  if (!ordered(arg_min, arg_max)) throw ParameterError("arg w range is empty");
}

std::mt19937_64 draw_generator(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

ParameterDraw draw_valid_params(std::mt19937_64& rng, const ParameterGrid& grid) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t resamples = 0; resamples <= kMaxResamples; ++resamples) {
    const double q = grid.q_max - (grid.q_max - grid.q_min) * unit(rng);
    const double eta = grid.eta_min + (grid.eta_max - grid.eta_min) * unit(rng);
    const double w_abs = grid.w_abs_min + (grid.w_abs_max - grid.w_abs_min) * unit(rng);
    const double arg = grid.arg_min + (grid.arg_max - grid.arg_min) * unit(rng);
    CayleyParams params(q, eta, std::polar(w_abs, arg));
    if (params.validity().usable()) return {params, resamples};
  }
  throw ParameterError("no usable coefficient after " + std::to_string(kMaxResamples) +
                       " resamples; the grid is inside the excluded set");
}

std::vector<SweepRow> run_sweep(const SweepOptions& options) {
  options.grid.validate();
  if (options.k_max < 0) throw ParameterError("k_max must be non-negative");
  std::vector<std::optional<SweepRow>> rows(options.draws);
  std::vector<std::exception_ptr> errors(options.draws);

  auto run_one = [&](std::uint64_t i) {
    try {
      std::mt19937_64 rng = draw_generator(options.seed, i);
      ParameterDraw draw = draw_valid_params(rng, options.grid);
      const std::uint64_t forcing_seed = rng();
      const LatticeWindow local(draw.params.q(), options.k_max);
      const PerturbationSpec spec = PerturbationSpec::random_phase(options.epsilon, forcing_seed);
      const SolutionBundle bundle = synthesize(draw.params, local, spec, options.c);
      rows[i] = SweepRow{i, draw.resamples, forcing_seed,
                         certify(draw.params, bundle, options.epsilon)};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::max(1u, threads);
  if (threads == 1 || options.draws < 2) {
    for (std::uint64_t i = 0; i < options.draws; ++i) run_one(i);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::uint64_t i = next++; i < options.draws; i = next++) run_one(i);
      });
    }
  }

  std::vector<SweepRow> out;
  out.reserve(options.draws);
  for (std::uint64_t i = 0; i < options.draws; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*rows[i]));
  }
  return out;
}

double max_bound_ratio(const std::vector<SweepRow>& rows) {
  double worst = 0.0;
  for (const SweepRow& row : rows) {
    if (row.report.bound > 0.0) worst = std::max(worst, row.report.sup_deviation / row.report.bound);
  }
  return worst;
}

}  // namespace qcayley
