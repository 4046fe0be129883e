#include "qcayley/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <system_error>

#include "qcayley/errors.hpp"

namespace qcayley::io {

namespace {

std::string scaled_real_text(const ScaledReal& x) {
  const auto f = x.to_float();
  if (!f.overflow && (f.value == 0.0) == x.is_zero()) return format_double(f.value);
  return format_hex(x);
}

Json optional_index(const std::optional<std::int64_t>& k) {
  return k ? Json(*k) : Json(nullptr);
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_hex(const ScaledReal& x) {
  if (x.is_zero()) return "0x0p+0";
  // mantissa in [0.5, 2); split off its binary exponent so the printed
  // significand starts with 1.
  int e = 0;
  const double frac = std::frexp(x.mantissa(), &e);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, frac * 2.0, std::chars_format::hex);
  std::string digits(buf, res.ptr);
  digits = digits.substr(0, digits.find('p'));
  return "0x" + digits + "p" + (x.exponent() + e - 1 >= 0 ? "+" : "") +
         std::to_string(x.exponent() + e - 1);
}

Json encode(const ScaledComplex& z) {
  return Json{{"re", z.mantissa().real()}, {"im", z.mantissa().imag()}, {"exp2", z.exponent()}};
}

Json encode(const ScaledReal& x) {
  return Json{{"mantissa", x.mantissa()}, {"exp2", x.exponent()}};
}

Json encode_complex(Complex z) {
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

ScaledComplex decode_scaled_complex(const Json& j) {
  try {
    return ScaledComplex::from_parts({j.at("re").get<double>(), j.at("im").get<double>()},
                                     j.at("exp2").get<std::int64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed scaled complex: ") + e.what());
  }
}

Json encode(const Validity& v) {
  Json j{{"kind", to_string(v.kind)}};
  if (v.branch != ForbiddenBranch::kNone) {
    j["branch"] = to_string(v.branch);
    j["k"] = v.k;
    j["relative_distance"] = v.relative_distance;
  }
  return j;
}

Json encode(const CayleyParams& p) {
  return Json{{"q", p.q()}, {"eta", p.eta()}, {"w", encode_complex(p.w())},
              {"validity", encode(p.validity())}};
}

Json encode(const Trajectory& t) {
  Json values = Json::array();
  for (const ScaledComplex& v : t.values()) values.push_back(encode(v));
  return Json{{"q", t.window().q()}, {"k_max", t.window().k_max()}, {"values", std::move(values)}};
}

Json encode(const PerturbationSpec& s) {
  Json j{{"kind", to_string(s.kind)}, {"epsilon", s.epsilon}};
  switch (s.kind) {
    case PerturbationSpec::Kind::kConstant:
      j["value"] = encode_complex(s.value);
      break;
    case PerturbationSpec::Kind::kRandomPhase:
      j["seed"] = s.seed;
      break;
    case PerturbationSpec::Kind::kCustom: {
      Json table = Json::array();
      for (Complex z : s.table) table.push_back(encode_complex(z));
      j["table"] = std::move(table);
      break;
    }
    case PerturbationSpec::Kind::kUnitPhaseOfP:
      break;
  }
  return j;
}

Json encode(const SolutionBundle& b) {
  return Json{{"spec", encode(b.spec)}, {"c", encode(b.c)}, {"P", encode(b.P)},
              {"S", encode(b.S)},       {"phi", encode(b.phi)}, {"E", encode(b.E)}};
}

Json encode(const TruncationInfo& t) {
  return Json{{"terms_used", t.terms_used}, {"tail_bound", t.tail_bound},
              {"last_ratio", t.last_ratio}};
}

Json encode(const TailSum& t) {
  return Json{{"value", encode(t.value)}, {"truncation", encode(t.truncation)},
              {"condition", t.condition}, {"precision_bits", t.precision_bits}};
}

Json encode(const HusReport& r) {
  Json j{{"params", encode(r.params)}, {"epsilon", r.epsilon}, {"verdict", to_string(r.verdict)}};
  if (r.verdict == Verdict::kNotApplicable) return j;
  j["bound"] = r.bound;
  j["sup_deviation"] = r.sup_deviation;
  j["sup_index"] = r.sup_index;
  j["majorant_bound"] = r.majorant_bound;
  j["x0"] = encode(r.x0);
  j["identity_error"] = r.identity_error;
  j["truncation"] = encode(r.truncation);
  j["condition"] = r.condition;
  j["precision_bits"] = r.precision_bits;
  j["route_discrepancy"] = r.route_discrepancy < 0.0 ? Json(nullptr) : Json(r.route_discrepancy);
  return j;
}

Json encode(const UniquenessEvidence& u) {
  return Json{{"delta", encode(u.delta)},
              {"threshold", u.threshold},
              {"violation_index", optional_index(u.violation_index)},
              {"deviation_at_violation", u.deviation_at_violation}};
}

Json encode(const TwoCycleResult& c) {
  return Json{{"p_star", encode_complex(c.p_star)},
              {"p_star_even", encode_complex(c.p_star_even)},
              {"p_star_abs", std::abs(c.p_star)},
              {"converged_at", c.converged_at},
              {"cycle_residual", c.cycle_residual},
              {"alternation_residual", c.alternation_residual}};
}

Json encode(const DivergenceEvidence& d) {
  Json crossings = Json::array();
  for (const Crossing& x : d.crossings) {
    crossings.push_back(Json{{"multiple", x.multiple}, {"index", optional_index(x.index)}});
  }
  Json profile = Json::array();
  for (const DivergenceRow& row : d.profile) {
    profile.push_back(Json{{"k", row.k}, {"p_abs", encode(row.p_abs)}, {"s_abs", encode(row.s_abs)},
                           {"deviation", encode(row.deviation)}});
  }
  return Json{{"c_tested", encode_complex(d.c_tested)},
              {"epsilon", d.epsilon},
              {"crossings", std::move(crossings)},
              {"max_deviation", encode(d.max_deviation)},
              {"profile", std::move(profile)}};
}

Json encode(const ParameterGrid& g) {
  return Json{{"q", {g.q_min, g.q_max}},
              {"eta", {g.eta_min, g.eta_max}},
              {"w_abs", {g.w_abs_min, g.w_abs_max}},
              {"w_arg", {g.arg_min, g.arg_max}}};
}

Json encode(const SweepRow& row) {
  return Json{{"draw", row.draw},
              {"resamples", row.resamples},
              {"forcing_seed", row.forcing_seed},
              {"report", encode(row.report)}};
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "k,t,re,im,exp2\n";
  for (std::int64_t k = 0; k <= traj.window().k_max(); ++k) {
    const ScaledComplex& v = traj[k];
    const auto plain = v.to_float();
    const bool in_range = !plain.overflow && (plain.value == Complex{}) == v.is_zero();
    out << k << ',' << scaled_real_text(lattice_value(traj.window().q(), k)) << ',';
    if (in_range) {
      out << format_double(plain.value.real()) << ',' << format_double(plain.value.imag()) << ",0\n";
    } else {
      out << format_double(v.mantissa().real()) << ',' << format_double(v.mantissa().imag()) << ','
          << v.exponent() << '\n';
    }
  }
}

void write_divergence_csv(std::ostream& out, const DivergenceEvidence& d) {
  out << "k,p_abs,s_abs,deviation\n";
  for (const DivergenceRow& row : d.profile) {
    out << row.k << ',' << scaled_real_text(row.p_abs) << ',' << scaled_real_text(row.s_abs) << ','
        << scaled_real_text(row.deviation) << '\n';
  }
}

void write_ratio_csv(std::ostream& out, const std::vector<double>& profile) {
  out << "m,ratio\n";
  for (std::size_t m = 0; m < profile.size(); ++m) {
    out << m << ',' << format_double(profile[m]) << '\n';
  }
}

void write_identity_csv(std::ostream& out, const std::vector<ScaledComplex>& deviations) {
  out << "k,re,im,error\n";
  for (std::size_t k = 0; k < deviations.size(); ++k) {
    const auto z = deviations[k].to_float().value;
    out << k << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << ','
        << format_double(std::abs(z)) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "draw,q,eta,w_re,w_im,resamples,sup_deviation,bound,majorant_bound,ratio,identity_error,verdict,"
         "precision_bits\n";
  for (const SweepRow& row : rows) {
    const HusReport& r = row.report;
    out << row.draw << ',' << format_double(r.params.q()) << ',' << format_double(r.params.eta())
        << ',' << format_double(r.params.w().real()) << ',' << format_double(r.params.w().imag())
        << ',' << row.resamples << ',' << format_double(r.sup_deviation) << ','
        << format_double(r.bound) << ',' << format_double(r.majorant_bound) << ','
        << format_double(r.sup_deviation / r.bound) << ','
        << format_double(r.identity_error) << ',' << to_string(r.verdict) << ','
        << r.precision_bits << '\n';
  }
  if (!rows.empty()) {
    out << "summary,,,,,,,,," << format_double(max_bound_ratio(rows)) << ",,,\n";
  }
}

}  // namespace qcayley::io
