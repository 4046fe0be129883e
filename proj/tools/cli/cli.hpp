#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcayley/io.hpp"
#include "qcayley/lattice.hpp"
#include "qcayley/sampling.hpp"

namespace qcayley::cli {

inline constexpr std::uint64_t kDefaultSeed = 42;

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,          // bad flags, out-of-range values, not-applicable analysis
  kForbidden = 2,      // excluded w (or near-singular with --strict)
  kNumerical = 3,      // truncation cap or convergence failure
  kBoundViolated = 4,  // a certified deviation exceeded eps / |w|
};

struct RunConfig {
  std::string command;
  double q = 2.0;
  double eta = 0.0;
  double w_re = 0.0;
  double w_im = 0.0;
  double epsilon = 0.1;
  std::int64_t kmax = kDefaultKMax;
  std::uint64_t seed = kDefaultSeed;
  double c_re = 0.0;
  double c_im = 0.0;
  /// Empty selects the command's default (csv for identity, ratio, sweep).
  std::string format;
  std::string output;
  /// constant | unit-phase | random-phase
  std::string kind = "random-phase";
  bool has_delta = false;
  double delta_re = 0.0;
  double delta_im = 0.0;
  bool strict = false;
  ParameterGrid grid;
  std::uint64_t draws = 0;
  unsigned threads = 0;
};

io::Json encode(const RunConfig& config);

/// Parses argv-style arguments (without the program name) and runs.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes the report to config.output (or `out`) and errors as JSON to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qcayley::cli
