#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcayley/cayley.hpp"
#include "qcayley/hus.hpp"
#include "qcayley/instability.hpp"
#include "qcayley/sampling.hpp"
#include "qcayley/solutions.hpp"

namespace qcayley::io {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form of x ("inf", "-inf", "nan" otherwise).
std::string format_double(double x);
/// Hexadecimal float with an unbounded binary exponent, e.g. 0x1.8p+4000.
std::string format_hex(const ScaledReal& x);

/// {"re", "im", "exp2"}: value = (re + i im) 2^exp2.
Json encode(const ScaledComplex& z);
/// {"mantissa", "exp2"}.
Json encode(const ScaledReal& x);
/// {"re", "im"}.
Json encode_complex(Complex z);
ScaledComplex decode_scaled_complex(const Json& j);

Json encode(const Validity& v);
Json encode(const CayleyParams& p);
Json encode(const Trajectory& t);
Json encode(const PerturbationSpec& s);
Json encode(const SolutionBundle& b);
Json encode(const TruncationInfo& t);
Json encode(const TailSum& t);
Json encode(const HusReport& r);
Json encode(const UniquenessEvidence& u);
Json encode(const TwoCycleResult& c);
Json encode(const DivergenceEvidence& d);
Json encode(const ParameterGrid& g);
Json encode(const SweepRow& row);

/// Columns k, t, re, im, exp2. Values in double range are written plainly with
/// exp2 = 0; otherwise re/im hold the mantissa and t is a hex float.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// Columns k, p_abs, s_abs, deviation (plain decimals or hex floats).
void write_divergence_csv(std::ostream& out, const DivergenceEvidence& d);
/// Columns m, ratio.
void write_ratio_csv(std::ostream& out, const std::vector<double>& profile);
/// Columns k, re, im, error for w psi(q^k) - 1.
void write_identity_csv(std::ostream& out, const std::vector<ScaledComplex>& deviations);
/// One row per draw plus a trailing summary row when rows exist.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace qcayley::io
