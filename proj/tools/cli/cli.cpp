#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qcayley/errors.hpp"
#include "qcayley/hus.hpp"
#include "qcayley/instability.hpp"
#include "qcayley/solutions.hpp"

namespace qcayley::cli {

namespace {

using io::Json;

/// Thrown for configuration problems found after flag parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string resolved_format(const RunConfig& config) {
  if (!config.format.empty()) return config.format;
  if (config.command == "identity" || config.command == "ratio" || config.command == "sweep") {
    return "csv";
  }
  return "json";
}

Complex w_of(const RunConfig& config) { return {config.w_re, config.w_im}; }
Complex c_of(const RunConfig& config) { return {config.c_re, config.c_im}; }

CayleyParams checked_params(const RunConfig& config) {
  CayleyParams params(config.q, config.eta, w_of(config));
  params.require_usable();
  if (config.strict && params.validity().kind == Validity::Kind::kNearSingular) {
    throw ForbiddenCoefficientError("w is near-singular and --strict is set",
                                    params.validity().k);
  }
  return params;
}

PerturbationSpec spec_of(const RunConfig& config) {
  if (config.kind == "constant") {
    return PerturbationSpec::constant(config.epsilon, {-config.epsilon, 0.0});
  }
  if (config.kind == "unit-phase") return PerturbationSpec::unit_phase_of_p(config.epsilon);
  if (config.kind == "random-phase") {
    return PerturbationSpec::random_phase(config.epsilon, config.seed);
  }
  throw UsageError("unknown perturbation kind '" + config.kind + "'");
}

void write_csv_header(std::ostream& out, const RunConfig& config) {
  out << "# config: " << encode(config).dump() << '\n';
}

struct Outcome {
  std::string body;
  int code = kOk;
};

Json report_head(const RunConfig& config) {
  return Json{{"config", encode(config)}};
}

Outcome cmd_solve(const RunConfig& config, const std::string& format) {
  const CayleyParams params = checked_params(config);
  const Trajectory P = product_solution(params, LatticeWindow(config.q, config.kmax));
  std::ostringstream out;
  if (format == "csv") {
    write_csv_header(out, config);
    io::write_trajectory_csv(out, P);
  } else {
    Json j = report_head(config);
    j["params"] = io::encode(params);
    j["P"] = io::encode(P);
    out << j.dump(2) << '\n';
  }
  return {out.str()};
}

Outcome cmd_perturb(const RunConfig& config, const std::string& format) {
  const CayleyParams params = checked_params(config);
  const SolutionBundle bundle =
      synthesize(params, LatticeWindow(config.q, config.kmax), spec_of(config), c_of(config));
  std::ostringstream out;
  if (format == "csv") {
    write_csv_header(out, config);
    io::write_trajectory_csv(out, bundle.phi);
  } else {
    Json j = report_head(config);
    j["params"] = io::encode(params);
    j["bundle"] = io::encode(bundle);
    j["identity_error"] = bundle_identity_error(bundle);
    out << j.dump(2) << '\n';
  }
  return {out.str()};
}

Outcome cmd_hus(const RunConfig& config, const std::string& format) {
  const CayleyParams params = checked_params(config);
  const LatticeWindow window(config.q, config.kmax);
  const SolutionBundle bundle = synthesize(params, window, spec_of(config), c_of(config));
  const HusReport report = certify(params, bundle, config.epsilon);
  Json j = report_head(config);
  j["report"] = io::encode(report);
  if (config.has_delta && report.verdict != Verdict::kNotApplicable) {
    j["uniqueness"] = io::encode(
        uniqueness_probe(params, bundle, config.epsilon, {config.delta_re, config.delta_im}));
  }
  std::ostringstream out;
  if (format == "csv") {
    write_csv_header(out, config);
    out << "key,value\n";
    for (const auto& [key, value] : j["report"].items()) {
      if (!value.is_structured()) out << key << ',' << value.dump() << '\n';
    }
  } else {
    out << j.dump(2) << '\n';
  }
  int code = kOk;
  if (report.verdict == Verdict::kBoundViolated) code = kBoundViolated;
  if (report.verdict == Verdict::kNotApplicable) code = kUsage;
  return {out.str(), code};
}

Outcome cmd_identity(const RunConfig& config, const std::string& format) {
  const CayleyParams params = checked_params(config);
  const ScaledComplex w = ScaledComplex::from_complex(params.w());
  std::vector<ScaledComplex> deviations;
  Json rows = Json::array();
  for (std::int64_t k = 0; k <= config.kmax; ++k) {
    const TailSum psi = tail_sum_psi(params, k);
    deviations.push_back(w * psi.value - ScaledComplex::one());
    rows.push_back(Json{{"k", k}, {"psi", io::encode(psi)}});
  }
  std::ostringstream out;
  if (format == "csv") {
    write_csv_header(out, config);
    io::write_identity_csv(out, deviations);
  } else {
    Json j = report_head(config);
    j["params"] = io::encode(params);
    j["rows"] = std::move(rows);
    out << j.dump(2) << '\n';
  }
  return {out.str()};
}

Outcome cmd_ratio(const RunConfig& config, const std::string& format) {
  const CayleyParams params = checked_params(config);
  const std::vector<double> profile =
      term_ratio_profile(params, LatticeWindow(config.q, config.kmax));
  std::ostringstream out;
  if (format == "csv") {
    write_csv_header(out, config);
    io::write_ratio_csv(out, profile);
  } else {
    const double limit = config.eta / (1.0 - config.eta);
    const auto burn_in = ratio_burn_in(profile, limit, 1e-6);
    Json j = report_head(config);
    j["params"] = io::encode(params);
    j["limit"] = limit;
    j["burn_in"] = burn_in ? Json(*burn_in) : Json(nullptr);
    j["ratios"] = profile;
    out << j.dump(2) << '\n';
  }
  return {out.str()};
}

Outcome cmd_cycle(const RunConfig& config, const std::string& format) {
  const CayleyParams params = checked_params(config);
  const TwoCycleResult cycle = two_cycle(params, LatticeWindow(config.q, config.kmax));
  std::ostringstream out;
  if (format == "csv") {
    write_csv_header(out, config);
    out << "p_re,p_im,p_abs,converged_at,cycle_residual\n"
        << io::format_double(cycle.p_star.real()) << ',' << io::format_double(cycle.p_star.imag())
        << ',' << io::format_double(std::abs(cycle.p_star)) << ',' << cycle.converged_at << ','
        << io::format_double(cycle.cycle_residual) << '\n';
  } else {
    Json j = report_head(config);
    j["params"] = io::encode(params);
    j["cycle"] = io::encode(cycle);
    out << j.dump(2) << '\n';
  }
  return {out.str()};
}

Outcome cmd_diverge(const RunConfig& config, const std::string& format) {
  const LatticeWindow window(config.q, config.kmax);
  DivergenceEvidence evidence;
  if (w_of(config) == Complex{} && config.eta < 0.5) {
    evidence = w_zero_divergence(config.q, config.eta, window, config.epsilon, c_of(config));
  } else if (config.eta == 0.5) {
    evidence = eta_half_S_divergence(checked_params(config), window, config.epsilon, c_of(config));
  } else {
    throw UsageError("diverge needs w = 0 or eta = 0.5");
  }
  std::ostringstream out;
  if (format == "csv") {
    write_csv_header(out, config);
    io::write_divergence_csv(out, evidence);
  } else {
    Json j = report_head(config);
    j["evidence"] = io::encode(evidence);
    out << j.dump(2) << '\n';
  }
  return {out.str()};
}

Outcome cmd_sweep(const RunConfig& config, const std::string& format) {
  if (config.grid.eta_max >= 0.5) {
    throw UsageError("sweep needs eta < 0.5; use cycle or diverge for eta = 0.5");
  }
  SweepOptions options;
  options.grid = config.grid;
  options.draws = config.draws;
  options.seed = config.seed;
  options.epsilon = config.epsilon;
  options.k_max = config.kmax;
  options.c = c_of(config);
  options.threads = config.threads;
  const std::vector<SweepRow> rows = run_sweep(options);

  std::uint64_t resamples = 0;
  bool violated = false;
  for (const SweepRow& row : rows) {
    resamples += row.resamples;
    violated = violated || row.report.verdict == Verdict::kBoundViolated;
  }
  std::ostringstream out;
  if (format == "csv") {
    write_csv_header(out, config);
    out << "# resamples: " << resamples << '\n';
    io::write_sweep_csv(out, rows);
  } else {
    Json j = report_head(config);
    Json list = Json::array();
    for (const SweepRow& row : rows) list.push_back(io::encode(row));
    j["rows"] = std::move(list);
    j["summary"] = Json{{"draws", rows.size()},
                        {"resamples", resamples},
                        {"max_bound_ratio", max_bound_ratio(rows)}};
    out << j.dump(2) << '\n';
  }
  return {out.str(), violated ? kBoundViolated : kOk};
}

Outcome dispatch(const RunConfig& config) {
  const std::string format = resolved_format(config);
  if (format != "json" && format != "csv") throw UsageError("format must be json or csv");
  if (!(config.epsilon > 0.0)) throw UsageError("epsilon must be positive");
  if (config.kmax < 0) throw UsageError("kmax must be non-negative");
  if (config.command == "solve") return cmd_solve(config, format);
  if (config.command == "perturb") return cmd_perturb(config, format);
  if (config.command == "hus") return cmd_hus(config, format);
  if (config.command == "identity") return cmd_identity(config, format);
  if (config.command == "ratio") return cmd_ratio(config, format);
  if (config.command == "cycle") return cmd_cycle(config, format);
  if (config.command == "diverge") return cmd_diverge(config, format);
  if (config.command == "sweep") return cmd_sweep(config, format);
  throw UsageError("unknown command '" + config.command + "'");
}

int emit_error(std::ostream& err, const RunConfig& config, std::string_view kind,
               const std::string& message, int code, Json extra = Json::object()) {
  Json j{{"error", kind}, {"message", message}, {"exit_code", code}};
  for (auto& [key, value] : extra.items()) j[key] = value;
  if (!config.command.empty()) j["config"] = encode(config);
  err << j.dump() << '\n';
  return code;
}

void add_common(CLI::App& sub, RunConfig& c) {
  sub.add_option("--q", c.q, "lattice base q > 1")->capture_default_str();
  sub.add_option("--eta", c.eta, "Cayley parameter in [0, 1/2]")->capture_default_str();
  sub.add_option("--w-re", c.w_re, "real part of w")->capture_default_str();
  sub.add_option("--w-im", c.w_im, "imaginary part of w")->capture_default_str();
  sub.add_option("--epsilon", c.epsilon, "perturbation size")->capture_default_str();
  sub.add_option("--kmax", c.kmax, "last lattice index")
      ->envname("QCAYLEY_KMAX")
      ->capture_default_str();
  sub.add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub.add_option("--c-re", c.c_re, "real part of c")->capture_default_str();
  sub.add_option("--c-im", c.c_im, "imaginary part of c")->capture_default_str();
  sub.add_option("--format", c.format, "json or csv");
  sub.add_option("--output", c.output, "report path (default stdout)");
  sub.add_flag("--strict", c.strict, "treat near-singular w as forbidden");
}

}  // namespace

Json encode(const RunConfig& c) {
  Json j{{"command", c.command},
         {"q", c.q},
         {"eta", c.eta},
         {"w", io::encode_complex({c.w_re, c.w_im})},
         {"epsilon", c.epsilon},
         {"kmax", c.kmax},
         {"seed", c.seed},
         {"c", io::encode_complex({c.c_re, c.c_im})},
         {"format", resolved_format(c)},
         {"kind", c.kind},
         {"strict", c.strict}};
  if (c.has_delta) j["delta"] = io::encode_complex({c.delta_re, c.delta_im});
  if (c.command == "sweep") {
    j["grid"] = io::encode(c.grid);
    j["draws"] = c.draws;
  }
  return j;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Outcome outcome = dispatch(config);
    if (config.output.empty()) {
      out << outcome.body;
    } else {
      std::ofstream file(config.output, std::ios::binary);
      if (!file) throw UsageError("cannot open output file " + config.output);
      file << outcome.body;
      if (!file.flush()) throw UsageError("failed writing " + config.output);
    }
    return outcome.code;
  } catch (const ForbiddenCoefficientError& e) {
    return emit_error(err, config, "ForbiddenCoefficient", e.what(), kForbidden, {{"k", e.k()}});
  } catch (const TruncationError& e) {
    return emit_error(err, config, "Truncation", e.what(), kNumerical);
  } catch (const ConvergenceError& e) {
    return emit_error(err, config, "Convergence", e.what(), kNumerical);
  } catch (const NotApplicableError& e) {
    return emit_error(err, config, "NotApplicable", e.what(), kUsage);
  } catch (const ParameterError& e) {
    return emit_error(err, config, "Parameter", e.what(), kUsage);
  } catch (const InputError& e) {
    return emit_error(err, config, "Input", e.what(), kUsage);
  } catch (const UsageError& e) {
    return emit_error(err, config, "Usage", e.what(), kUsage);
  } catch (const Error& e) {
    return emit_error(err, config, "Numerical", e.what(), kNumerical);
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Cayley quantum equation solver and stability checker", "qcayley"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"solve", "product solution P"},
      {"perturb", "perturbed trajectory phi = P S + c P"},
      {"hus", "certify the deviation bound for a perturbed trajectory"},
      {"identity", "w psi(q^k) - 1 table"},
      {"ratio", "term ratio profile a_{m+1} / a_m"},
      {"cycle", "two-cycle limit of P at eta = 1/2"},
      {"diverge", "divergence evidence for w = 0 or eta = 1/2"},
      {"sweep", "randomized certification over a parameter grid"},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(*sub, config);
    sub->callback([&config, name = std::string(s.name)] { config.command = name; });
    const std::string name(s.name);
    if (name == "perturb" || name == "hus") {
      sub->add_option("--kind", config.kind, "constant | unit-phase | random-phase")
          ->capture_default_str();
    }
    if (name == "hus") {
      sub->add_option("--delta-re", config.delta_re, "uniqueness probe shift, real part");
      sub->add_option("--delta-im", config.delta_im, "uniqueness probe shift, imaginary part");
    }
    if (name == "sweep") {
      ParameterGrid& g = config.grid;
      sub->add_option("--draws", config.draws, "number of parameter draws")->capture_default_str();
      sub->add_option("--threads", config.threads, "worker threads (0 = all cores)");
      sub->add_option("--q-min", g.q_min)->capture_default_str();
      sub->add_option("--q-max", g.q_max)->capture_default_str();
      sub->add_option("--eta-min", g.eta_min)->capture_default_str();
      sub->add_option("--eta-max", g.eta_max)->capture_default_str();
      sub->add_option("--w-abs-min", g.w_abs_min)->capture_default_str();
      sub->add_option("--w-abs-max", g.w_abs_max)->capture_default_str();
      sub->add_option("--arg-min", g.arg_min)->capture_default_str();
      sub->add_option("--arg-max", g.arg_max)->capture_default_str();
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    return emit_error(err, config, "Usage", e.what(), kUsage);
  }
  if (config.command == "hus") {
    const CLI::App* hus = app.get_subcommand("hus");
    config.has_delta = hus->count("--delta-re") + hus->count("--delta-im") > 0;
  }
  return run(config, out, err);
}

}  // namespace qcayley::cli
