#include "commands.hpp"

#include "acceptance.hpp"
#include "config.hpp"

#include <moyal/moyal.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace moyal::cli {
namespace {

using nlohmann::json;

/// Numeric failure carrying an already-emitted report.
struct Outcome {
  bool passed = true;
};

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  return v.dump();
}

// Writes records as JSON lines or CSV rows; every artifact carries the
// configuration, its provenance and the library versions.
class Emitter {
 public:
  Emitter(const RunConfig& config, std::string command, std::ostream& out)
      : config_(config), command_(std::move(command)), out_(out) {}

  void set_tolerance(double value, std::string source) {
    tol_ = value;
    tol_source_ = std::move(source);
  }

  void emit(const json& record) {
    if (config_.output == OutputFormat::json) {
      json full = record;
      full["command"] = command_;
      full["config"] = config_json(config_);
      full["provenance"] = provenance();
      full["version"] = version_json();
      out_ << full.dump() << '\n';
      return;
    }
    if (columns_.empty()) {
      const json header = {{"command", command_},
                           {"config", config_json(config_)},
                           {"provenance", provenance()},
                           {"version", version_json()}};
      out_ << "# " << header.dump() << '\n';
      for (const auto& item : record.items()) columns_.push_back(item.key());
      for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
      out_ << '\n';
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      out_ << (i ? "," : "");
      if (record.contains(columns_[i])) out_ << csv_cell(record.at(columns_[i]));
    }
    out_ << '\n';
  }

 private:
  json provenance() const {
    json p = config_.provenance;
    if (tol_source_.size()) p["tolerance"] = {{"value", tol_}, {"source", tol_source_}};
    return p;
  }

  const RunConfig& config_;
  std::string command_;
  std::ostream& out_;
  std::vector<std::string> columns_;
  double tol_ = 0.0;
  std::string tol_source_;
};

json omega_json(const std::optional<double>& omega) {
  return omega ? json(*omega) : json();
}

std::vector<long> parse_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("cannot parse integer list '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

AlgebraElement read_element(const std::string& path) {
  try {
    return element_from_json(read_json_file(path));
  } catch (const FormatError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

struct DistanceArgs {
  std::optional<int> m, n, max_index;
};

Outcome cmd_distance(const RunConfig& config, const DistanceArgs& args, std::ostream& out) {
  std::vector<std::pair<int, int>> pairs;
  if (args.max_index) {
    if (*args.max_index < 1) throw UsageError("--max-index must be >= 1");
    for (int m = 1; m <= *args.max_index; ++m)
      for (int n = 0; n < m; ++n) pairs.emplace_back(m, n);
  } else {
    if (!args.m || !args.n) throw UsageError("distance: --m and --n are required");
    if (*args.m < 0 || *args.n < 0) throw UsageError("distance: indices must be >= 0");
    pairs.emplace_back(*args.m, *args.n);
  }
  Emitter emit(config, "distance", out);
  emit.set_tolerance(config.tol, config.provenance.at("tol"));
  Outcome outcome;
  for (const auto& [m, n] : pairs) {
    const double closed = distance_closed_form(m, n, config.theta, config.omega);
    const double lp = distance_lp_oracle(m, n, config.theta, config.truncation, config.omega).value;
    const double diff = std::abs(closed - lp);
    const bool pass = diff <= config.tol;
    outcome.passed = outcome.passed && pass;
    emit.emit({{"m", m},
               {"n", n},
               {"theta", config.theta},
               {"omega", omega_json(config.omega)},
               {"closed_form", closed},
               {"lp_oracle", lp},
               {"abs_diff", diff},
               {"pass", pass}});
  }
  return outcome;
}

Outcome cmd_causal(const RunConfig& config, const std::string& k1s, const std::string& k2s,
                   std::ostream& out) {
  const CoherentParam k1{parse_complex(k1s)}, k2{parse_complex(k2s)};
  const CausalVerdict v = causal_classifier(k1, k2);
  Emitter emit(config, "causal", out);
  emit.emit({{"kappa1", format_complex(k1.kappa)},
             {"kappa2", format_complex(k2.kappa)},
             {"related", v.related},
             {"direction", std::string(to_string(v.direction))},
             {"arg_delta", v.arg_delta},
             {"witness_a", witness_value(k1, k2, Witness::a)},
             {"witness_atilde", witness_value(k1, k2, Witness::a_tilde)}});
  return {};
}

struct SeminormArgs {
  std::string input;
  std::optional<int> optimal;
  std::string basis;
};

Outcome cmd_seminorm(const RunConfig& config, const SeminormArgs& args, std::ostream& out) {
  const int chosen = !args.input.empty() + args.optimal.has_value() + !args.basis.empty();
  if (chosen != 1) throw UsageError("seminorm: give exactly one of --input, --optimal, --basis");
  std::optional<AlgebraElement> a;
  std::string source;
  if (!args.input.empty()) {
    a = read_element(args.input);
    source = args.input;
  } else if (args.optimal) {
    a = optimal_element(*args.optimal, config.truncation, config.theta);
    source = "optimal " + std::to_string(*args.optimal);
  } else {
    const std::vector<long> idx = parse_list(args.basis);
    if (idx.size() != 2) throw UsageError("--basis expects m,n");
    a = AlgebraElement::basis(static_cast<int>(idx[0]), static_cast<int>(idx[1]),
                              config.truncation, config.theta);
    source = "basis " + args.basis;
  }

  Emitter emit(config, "seminorm", out);
  emit.set_tolerance(config.tol, config.provenance.at("tol"));
  const SeminormReport d0 = seminorm_d0(*a);
  json record = {{"element", source},
                 {"truncation", a->truncation()},
                 {"theta", a->theta()},
                 {"l_d0", d0.value},
                 {"norm_holo", d0.norm_holo},
                 {"norm_antiholo", d0.norm_antiholo},
                 {"in_ball", d0.in_ball},
                 {"edge_warning", d0.edge_warning},
                 {"omega", omega_json(config.omega)},
                 {"l_dk", nullptr},
                 {"l_dk_direct", nullptr},
                 {"rel_diff", nullptr}};
  Outcome outcome;
  if (config.omega) {
    const SeminormReport dk = seminorm_dk(*a, *config.omega);
    record["l_dk"] = dk.value;
    record["in_ball"] = dk.in_ball;
    if (a->truncation() <= kDiracGuard) {
      const double direct = seminorm_dk_direct(*a, *config.omega);
      const double diff = std::abs(direct - dk.value) / std::max(dk.value, 1e-300);
      record["l_dk_direct"] = direct;
      record["rel_diff"] = dk.value == 0.0 ? std::abs(direct) : diff;
      outcome.passed = record["rel_diff"].get<double>() <= config.tol;
    }
  }
  emit.emit(record);
  return outcome;
}

struct ConeArgs {
  std::string input;
  std::string witness;
  double rel_tol = 1e-10;
};

Outcome cmd_cone_check(const RunConfig& config, const ConeArgs& args, std::ostream& out) {
  if (args.input.empty() == args.witness.empty())
    throw UsageError("cone-check: give exactly one of --input, --witness");
  std::optional<AlgebraElement> a;
  std::string source = args.input;
  if (!args.input.empty()) {
    a = read_element(args.input);
  } else {
    source = "witness " + args.witness;
    if (args.witness == "a")
      a = witness_element(Witness::a, config.truncation, config.theta);
    else if (args.witness == "atilde")
      a = witness_element(Witness::a_tilde, config.truncation, config.theta);
    else if (args.witness == "-a")
      a = -witness_element(Witness::a, config.truncation, config.theta);
    else
      throw UsageError("--witness must be a, atilde or -a");
  }
  ConeOptions options;
  options.rel_tol = args.rel_tol;
  const CausalCertificate c = cone_membership(*a, options);
  Emitter emit(config, "cone-check", out);
  emit.set_tolerance(c.tol, "rel_tol x max matrix 1-norm");
  emit.emit({{"element", source},
             {"truncation", a->truncation()},
             {"min_eig_alpha", c.min_eig_alpha},
             {"min_eig_beta", c.min_eig_beta},
             {"herm_residual_alpha", c.herm_residual_alpha},
             {"herm_residual_beta", c.herm_residual_beta},
             {"edge_mass", c.edge_mass},
             {"tol", c.tol},
             {"verdict", std::string(to_string(c.verdict))}});
  return {};
}

Outcome cmd_zeta(const RunConfig& config, double s, const std::string& list, std::ostream& out) {
  std::vector<long> m0s = parse_list(list);
  for (long m0 : m0s)
    if (m0 < 0) throw UsageError("--m0-list entries must be >= 0");
  std::sort(m0s.begin(), m0s.end());
  m0s.erase(std::unique(m0s.begin(), m0s.end()), m0s.end());
  Emitter emit(config, "zeta-divergence", out);
  Outcome outcome;
  double previous = -1.0;
  for (long m0 : m0s) {
    const DivergenceReport d = divergence_bound(m0, s, config.theta);
    const bool minorant = d.a2 >= d.a2_minorant;
    const bool growing = d.bound > previous;
    outcome.passed = outcome.passed && minorant && growing;
    previous = d.bound;
    emit.emit({{"m0", m0},
               {"s", s},
               {"theta", config.theta},
               {"zeta", d.zeta},
               {"A1", d.a1},
               {"A2", d.a2},
               {"B", d.bound},
               {"a2_minorant", d.a2_minorant},
               {"a2_minorant_unshifted", d.a2_minorant_unshifted},
               {"minorant_holds", minorant},
               {"increasing", growing}});
  }
  return outcome;
}

Outcome cmd_grid(const RunConfig& config, int points, double half_width, std::ostream& out) {
  const double tol = config.is_set("tol") ? config.tol : 1e-3;
  const acceptance::GridReport g = acceptance::grid_report(points, half_width, config.theta,
                                                           config.seed);
  Emitter emit(config, "grid-selftest", out);
  emit.set_tolerance(tol, config.is_set("tol") ? config.provenance.at("tol") : "pinned");
  const bool pass = g.worst() <= tol;
  emit.emit({{"points", points},
             {"half_width", half_width},
             {"theta", config.theta},
             {"f00_square_error", g.f00_square},
             {"zbar_f00_error", g.zbar_f00},
             {"commuting_square_error", g.commuting_square},
             {"pass", pass}});
  return {pass};
}

Outcome cmd_homothety(const RunConfig& config, int samples, std::ostream& out) {
  if (samples < 1) throw UsageError("--samples must be >= 1");
  const int n = config.is_set("truncation") ? config.truncation : 16;
  if (n > kDiracGuard) throw GuardError("homothety-check: truncation exceeds 48");
  std::vector<double> omegas = {0.25, 0.5, 1.0};
  if (config.omega) omegas = {*config.omega};
  Emitter emit(config, "homothety-check", out);
  emit.set_tolerance(config.tol, config.provenance.at("tol"));
  Outcome outcome;
  for (double omega : omegas) {
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      CMatrix c = CMatrix::Zero(n, n);
      for (int q = 0; q < std::max(1, n - 2); ++q)
        for (int p = 0; p < std::max(1, n - 2); ++p) c(p, q) = Complex{g(rng), g(rng)};
      const AlgebraElement a(c, config.theta);
      const double ratio = seminorm_dk_direct(a, omega) / seminorm_d0(a).value;
      const double expected = std::sqrt(1.0 + omega * omega);
      worst = std::max(worst, std::abs(ratio - expected) / expected);
    }
    const bool pass = worst <= config.tol;
    outcome.passed = outcome.passed && pass;
    emit.emit({{"omega", omega},
               {"samples", samples},
               {"truncation", n},
               {"expected_ratio", std::sqrt(1.0 + omega * omega)},
               {"max_rel_deviation", worst},
               {"pass", pass}});
  }
  return outcome;
}

Outcome cmd_selftest(const RunConfig& config, const std::string& only, bool timings,
                     std::ostream& out, std::ostream& err) {
  acceptance::Options options;
  if (config.is_set("tol")) options.tol = config.tol;
  if (config.is_set("truncation")) options.truncation = config.truncation;
  options.seed = config.seed;
  if (!only.empty())
    for (long id : parse_list(only)) {
      if (id < 1 || id > 11) throw UsageError("--only entries must lie in 1..11");
      options.only.insert(static_cast<int>(id));
    }
  const std::vector<acceptance::Result> results = acceptance::run(options);
  Emitter emit(config, "selftest", out);
  Outcome outcome;
  for (const auto& r : results) {
    emit.emit(acceptance::to_json(r, timings));
    err << acceptance::format_line(r) << '\n';
    outcome.passed = outcome.passed && r.passed;
  }
  return outcome;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moyal plane: spectral distances and causal structure"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", MOYAL_VERSION);

  std::optional<double> theta, omega, tol;
  std::optional<int> truncation;
  std::optional<std::uint64_t> seed;
  std::string output, config_path;
  app.add_option("--theta", theta, "deformation parameter (default 2, so sqrt(theta/2) = 1)");
  app.add_option("--omega", omega, "harmonic-oscillator parameter in (0, 1]");
  app.add_option("--truncation", truncation, "matrix truncation N (default 64)");
  app.add_option("--tol", tol, "pass/fail tolerance (default 1e-9)");
  app.add_option("--output", output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "seed for randomized sweeps");
  app.add_option("--config", config_path, "JSON file mirroring the run configuration");

  DistanceArgs dist;
  auto* distance = app.add_subcommand("distance", "closed-form vs LP spectral distance");
  distance->add_option("--m", dist.m, "first basis-state index");
  distance->add_option("--n", dist.n, "second basis-state index");
  distance->add_option("--max-index", dist.max_index, "sweep all 0 <= n < m <= value");

  std::string k1, k2;
  auto* causal = app.add_subcommand("causal", "causal relation between coherent states");
  causal->add_option("--k1", k1, "kappa of the first coherent state (a+bi)")->required();
  causal->add_option("--k2", k2, "kappa of the second coherent state (a+bi)")->required();

  SeminormArgs semi;
  auto* seminorm = app.add_subcommand("seminorm", "Lipschitz seminorms of an element");
  seminorm->add_option("--input", semi.input, "AlgebraElement JSON file");
  seminorm->add_option("--optimal", semi.optimal, "use the optimal element for this m0");
  seminorm->add_option("--basis", semi.basis, "use the basis element f_mn, given as m,n");

  ConeArgs cone;
  auto* cone_check = app.add_subcommand("cone-check", "causal-cone certificate of an element");
  cone_check->add_option("--input", cone.input, "AlgebraElement JSON file");
  cone_check->add_option("--witness", cone.witness, "a, atilde or -a");
  cone_check->add_option("--rel-tol", cone.rel_tol, "relative PSD tolerance (default 1e-10)");

  double zeta_s = 1.4;
  std::string m0_list = "100,1000,10000";
  auto* zeta = app.add_subcommand("zeta-divergence", "divergence bound for zeta states");
  zeta->add_option("--s", zeta_s, "zeta-state exponent s > 1 (default 1.4)");
  zeta->add_option("--m0-list", m0_list, "comma-separated m0 values");

  int grid_points = 32;
  double grid_half_width = 6.0;
  auto* grid = app.add_subcommand("grid-selftest", "grid quadrature cross-checks");
  grid->add_option("--points", grid_points, "grid points per side (default 32)");
  grid->add_option("--half-width", grid_half_width, "box half width L (default 6)");

  int samples = 100;
  auto* homothety = app.add_subcommand("homothety-check", "D_k vs D_0 seminorm ratio");
  homothety->add_option("--samples", samples, "random elements per omega (default 100)");

  std::string only;
  bool timings = false;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--only", only, "comma-separated criteria to run");
  selftest->add_flag("--timings", timings, "include wall-clock seconds in records");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForVersion&) {
    out << MOYAL_VERSION << '\n';
    return kExitPass;
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) apply_config_file(config, config_path);
    auto flag = [&](auto& source, auto& target, const char* name) {
      if (source) {
        target = *source;
        config.provenance[name] = "flag";
      }
    };
    flag(theta, config.theta, "theta");
    flag(truncation, config.truncation, "truncation");
    flag(tol, config.tol, "tol");
    flag(seed, config.seed, "seed");
    if (omega) {
      config.omega = *omega;
      config.provenance["omega"] = "flag";
    }
    if (!output.empty()) {
      config.output = output == "csv" ? OutputFormat::csv : OutputFormat::json;
      config.provenance["output"] = "flag";
    }
    config.validate();

    Outcome outcome;
    if (*distance)
      outcome = cmd_distance(config, dist, out);
    else if (*causal)
      outcome = cmd_causal(config, k1, k2, out);
    else if (*seminorm)
      outcome = cmd_seminorm(config, semi, out);
    else if (*cone_check)
      outcome = cmd_cone_check(config, cone, out);
    else if (*zeta)
      outcome = cmd_zeta(config, zeta_s, m0_list, out);
    else if (*grid)
      outcome = cmd_grid(config, grid_points, grid_half_width, out);
    else if (*homothety)
      outcome = cmd_homothety(config, samples, out);
    else if (*selftest)
      outcome = cmd_selftest(config, only, timings, out, err);
    return outcome.passed ? kExitPass : kExitFailure;
  } catch (const UsageError& e) {
    err << "moyal: " << e.what() << '\n';
  } catch (const TruncationError& e) {
    err << "moyal: " << e.what() << '\n';
  } catch (const GuardError& e) {
    err << "moyal: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "moyal: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace moyal::cli
