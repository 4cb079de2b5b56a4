#include "qic/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "qic/errors.hpp"
#include "qic/metrics.hpp"
#include "qic/rng.hpp"

namespace qic {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int max_inputs_for(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::Linear:
      return kMaxInputs;
    case AnsatzKind::Quadratic:
      return kMaxQuadraticInputs;
    case AnsatzKind::Exponential:
      return kMaxExponentialInputs;
  }
  return 0;
}

// All per-cell randomness derives from this; the stream split inside Rng
// keeps target, mask, init and sampling draws apart.
std::uint64_t cell_seed(const ExperimentConfig& config, int n, int repetition) {
  return mix_seed(config.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(repetition));
}

OptimizeConfig cell_optimizer(const ExperimentConfig& config, std::uint64_t seed) {
  OptimizeConfig opt = config.optimizer;
  opt.seed = seed;
  return opt;
}

BoundCheck bound_of(const OptimizeResult& result, const Ansatz& ansatz) {
  return {result.final_distance, worst_case_bound(ansatz.param_count(), ansatz.n_inputs())};
}

std::vector<std::string> row_prefix(const ExperimentConfig& config, std::string_view ansatz, int n, std::size_t m) {
  return {std::string(to_string(config.experiment)), std::to_string(config.seed), std::string(ansatz),
          std::to_string(n), std::to_string(m)};
}

CsvTable table_with(std::vector<std::string> extra) {
  CsvTable table;
  table.header = {"experiment", "seed", "ansatz", "n", "m"};
  table.header.insert(table.header.end(), extra.begin(), extra.end());
  return table;
}

void append(std::vector<std::string>& row, std::initializer_list<std::string> values) {
  row.insert(row.end(), values.begin(), values.end());
}

std::string fraction_or_blank(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

template <typename T>
T get_or(const nlohmann::json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  return doc.at(key).get<T>();
}

}  // namespace

std::string_view to_string(Experiment experiment) {
  switch (experiment) {
    case Experiment::Fit:
      return "fit";
    case Experiment::Sweep:
      return "sweep";
    case Experiment::Generalize:
      return "generalize";
    case Experiment::MajorityRatios:
      return "majority_ratios";
    case Experiment::BpStats:
      return "bp_stats";
    case Experiment::Entropy:
      return "entropy";
    case Experiment::Validate:
      return "validate";
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view name) {
  for (auto e : {Experiment::Fit, Experiment::Sweep, Experiment::Generalize, Experiment::MajorityRatios,
                 Experiment::BpStats, Experiment::Entropy, Experiment::Validate}) {
    if (name == to_string(e)) return e;
  }
  if (name == "majority-ratios") return Experiment::MajorityRatios;
  if (name == "bp-stats") return Experiment::BpStats;
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (ansatze.empty()) throw ConfigError("no ansatz selected");
  if (n_min < 1 || n_max < n_min) {
    throw ConfigError("invalid N range " + std::to_string(n_min) + ".." + std::to_string(n_max));
  }
  for (auto kind : ansatze) {
    if (n_max > max_inputs_for(kind)) {
      throw ConfigError("N=" + std::to_string(n_max) + " exceeds the cap of " +
                        std::to_string(max_inputs_for(kind)) + " for the " + std::string(to_string(kind)) +
                        " ansatz");
    }
  }
  if (target.kind != "gaussian" && target.kind != "majority" && target.kind != "random" && target.kind != "csv") {
    throw ConfigError("unknown target kind '" + target.kind + "'");
  }
  if (target.kind == "csv") {
    if (target.csv_path.empty()) throw ConfigError("target kind csv needs a path");
    if (!std::filesystem::exists(target.csv_path)) {
      throw ConfigError("target file not found: " + target.csv_path.string());
    }
  }
  if (!(target.gaussian.sigma2 > 0.0)) throw ConfigError("sigma2 must be positive");
  if (fractions.empty()) throw ConfigError("no mask fraction given");
  for (double f : fractions) {
    if (!(f >= 0.0 && f < 1.0)) throw ConfigError("mask fraction must lie in [0, 1)");
  }
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (samples < kMinSamples) throw ConfigError("samples must be >= " + std::to_string(kMinSamples));
  if (outcomes < 1) throw ConfigError("outcomes must be >= 1");
  if (bp_mode != "n" && bp_mode != "m") throw ConfigError("bp_mode must be 'n' or 'm'");
  if (experiment == Experiment::MajorityRatios && target.kind != "majority" && target.kind != "csv") {
    throw ConfigError("majority_ratios needs a majority or csv target");
  }
  try {
    optimizer.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

std::filesystem::path default_output_path(Experiment experiment) {
  std::filesystem::path dir = ".";
  if (const char* env = std::getenv("QIC_OUTPUT_DIR"); env != nullptr && *env != '\0') dir = env;
  return dir / (std::string(to_string(experiment)) + ".csv");
}

ExperimentConfig default_config(Experiment experiment) {
  ExperimentConfig config;
  config.experiment = experiment;
  switch (experiment) {
    case Experiment::Sweep:
      config.target.kind = "majority";
      config.ansatze = {AnsatzKind::Linear, AnsatzKind::Quadratic};
      config.n_min = 2;
      config.n_max = 8;
      break;
    case Experiment::Generalize:
      config.n_min = 6;
      config.n_max = 10;
      config.fractions = {0.7};
      break;
    case Experiment::MajorityRatios:
      config.target.kind = "majority";
      config.ansatze = {AnsatzKind::Quadratic};
      config.n_min = config.n_max = 4;
      config.fractions = {0.7};
      break;
    case Experiment::BpStats:
      config.n_min = 4;
      config.n_max = 10;
      break;
    case Experiment::Entropy:
      config.n_min = 3;
      config.n_max = 9;
      break;
    case Experiment::Fit:
    case Experiment::Validate:
      break;
  }
  config.output = default_output_path(experiment);
  return config;
}

ExperimentConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig config;
  try {
    config = default_config(doc.contains("experiment") ? parse_experiment(doc.at("experiment").get<std::string>())
                                                       : Experiment::Fit);
    if (doc.contains("ansatz")) {
      const auto& a = doc.at("ansatz");
      config.ansatze.clear();
      if (a.is_array()) {
        for (const auto& x : a) config.ansatze.push_back(parse_ansatz_kind(x.get<std::string>()));
      } else {
        config.ansatze.push_back(parse_ansatz_kind(a.get<std::string>()));
      }
    }
    if (doc.contains("n")) {
      const auto& n = doc.at("n");
      if (n.is_array()) {
        if (n.size() != 2) throw ConfigError("n range must be [min, max]");
        config.n_min = n[0].get<int>();
        config.n_max = n[1].get<int>();
      } else {
        config.n_min = config.n_max = n.get<int>();
      }
    }
    if (doc.contains("target")) {
      const auto& t = doc.at("target");
      config.target.kind = get_or<std::string>(t, "kind", config.target.kind);
      if (t.contains("center")) config.target.gaussian.center = t.at("center").get<double>();
      config.target.gaussian.sigma2 = get_or(t, "sigma2", config.target.gaussian.sigma2);
      if (t.contains("csv")) config.target.csv_path = t.at("csv").get<std::string>();
    }
    if (doc.contains("fraction")) {
      const auto& f = doc.at("fraction");
      config.fractions = f.is_array() ? f.get<std::vector<double>>() : std::vector<double>{f.get<double>()};
    }
    config.seed = get_or(doc, "seed", config.seed);
    config.repetitions = get_or(doc, "repetitions", config.repetitions);
    config.samples = get_or(doc, "samples", config.samples);
    config.outcomes = get_or(doc, "outcomes", config.outcomes);
    config.bp_mode = get_or(doc, "bp_mode", config.bp_mode);
    if (doc.contains("optimizer")) {
      const auto& o = doc.at("optimizer");
      auto& opt = config.optimizer;
      opt.max_iterations = get_or(o, "max_iterations", opt.max_iterations);
      opt.gradient_tolerance = get_or(o, "gradient_tolerance", opt.gradient_tolerance);
      opt.restarts = get_or(o, "restarts", opt.restarts);
      opt.small_scale = get_or(o, "small_scale", opt.small_scale);
      if (o.contains("init")) opt.init = parse_init_scheme(o.at("init").get<std::string>());
    }
    if (doc.contains("output")) config.output = doc.at("output").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
  ExperimentConfig config = config_from_json(doc);
  // Target files are looked up next to the config.
  if (!config.target.csv_path.empty() && config.target.csv_path.is_relative()) {
    config.target.csv_path = path.parent_path() / config.target.csv_path;
  }
  return config;
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json doc;
  doc["experiment"] = std::string(to_string(config.experiment));
  auto& ansatze = doc["ansatz"] = nlohmann::json::array();
  for (auto kind : config.ansatze) ansatze.push_back(std::string(to_string(kind)));
  doc["n"] = {config.n_min, config.n_max};
  auto& t = doc["target"];
  t["kind"] = config.target.kind;
  if (config.target.gaussian.center) t["center"] = *config.target.gaussian.center;
  t["sigma2"] = config.target.gaussian.sigma2;
  if (!config.target.csv_path.empty()) t["csv"] = config.target.csv_path.string();
  doc["fraction"] = config.fractions;
  doc["seed"] = config.seed;
  doc["repetitions"] = config.repetitions;
  doc["samples"] = config.samples;
  doc["outcomes"] = config.outcomes;
  doc["bp_mode"] = config.bp_mode;
  auto& o = doc["optimizer"];
  o["max_iterations"] = config.optimizer.max_iterations;
  o["gradient_tolerance"] = config.optimizer.gradient_tolerance;
  o["restarts"] = config.optimizer.restarts;
  o["init"] = std::string(to_string(config.optimizer.init));
  o["small_scale"] = config.optimizer.small_scale;
  doc["output"] = config.output.string();
  return doc;
}

TargetDistribution make_target(const TargetSpec& spec, int n_inputs, std::uint64_t seed) {
  if (spec.kind == "gaussian") return gaussian_target(n_inputs, spec.gaussian);
  if (spec.kind == "majority") return majority_target(n_inputs);
  if (spec.kind == "random") return random_target(n_inputs, seed);
  if (spec.kind == "csv") {
    auto target = load_target_csv(spec.csv_path);
    if (target.n_inputs() != n_inputs) {
      throw ConfigError("target file has N=" + std::to_string(target.n_inputs()) + ", config asks for N=" +
                        std::to_string(n_inputs));
    }
    return target;
  }
  throw ConfigError("unknown target kind '" + spec.kind + "'");
}

SamplingReport sample_outcomes(const TargetDistribution& rule, const TargetDistribution& masked,
                               const ConditionalOutput& out, std::size_t outcomes, std::uint64_t seed) {
  Rng rng(seed, Stream::Sampling);
  SamplingReport report;
  report.n_o = outcomes;
  const std::uint64_t inputs = std::uint64_t{1} << out.n_inputs;
  for (std::size_t i = 0; i < outcomes; ++i) {
    const std::uint64_t b = rng.below(inputs);
    const int a = rng.uniform() < out.prob(b, 0) ? 0 : 1;
    if (rule.conditional(b, a) <= 0.0) continue;
    if (masked.seen(b)) {
      ++report.n_p;
    } else {
      ++report.n_n;
    }
  }
  return report;
}

ExpectedRatios expected_outcomes(const TargetDistribution& rule, const TargetDistribution& masked,
                                 const ConditionalOutput& out) {
  ExpectedRatios expected;
  const std::uint64_t inputs = std::uint64_t{1} << out.n_inputs;
  const double weight = 1.0 / static_cast<double>(inputs);
  for (std::uint64_t b = 0; b < inputs; ++b) {
    for (int a = 0; a < 2; ++a) {
      if (rule.conditional(b, a) <= 0.0) continue;
      (masked.seen(b) ? expected.p : expected.n) += weight * out.prob(b, a);
    }
  }
  return expected;
}

std::vector<FitCell> run_fit(const ExperimentConfig& config) {
  config.validate();
  std::vector<FitCell> cells;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    const std::uint64_t seed = cell_seed(config, n, 0);
    const auto original = make_target(config.target, n, seed);
    const auto masked = mask_fraction(original, config.fractions.front(), seed);
    for (auto kind : config.ansatze) {
      const auto start = Clock::now();
      const auto ansatz = Ansatz::make(kind, n);
      FitCell cell;
      cell.ansatz = ansatz.label();
      cell.n_inputs = n;
      cell.param_count = ansatz.param_count();
      cell.result = minimize(ansatz, masked, cell_optimizer(config, seed));
      cell.output = conditional_output(ansatz, cell.result.best_params);
      cell.hellinger_full = restricted_distance(original, cell.output, Support::Full).hellinger;
      cell.hellinger_seen =
          restricted_distance(original, masked.seen_mask(), cell.output, Support::Seen).hellinger;
      cell.bound = bound_of(cell.result, ansatz);
      cell.target = original;
      cell.seen = masked.seen_mask();
      cell.wall_seconds = seconds_since(start);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

std::vector<SweepCell> run_sweep(const ExperimentConfig& config) {
  config.validate();
  std::vector<SweepCell> cells;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    for (auto kind : config.ansatze) {
      const auto start = Clock::now();
      const auto ansatz = Ansatz::make(kind, n);
      std::vector<double> distances;
      BoundCheck worst{0.0, worst_case_bound(ansatz.param_count(), n)};
      for (int r = 0; r < config.repetitions; ++r) {
        const std::uint64_t seed = cell_seed(config, n, r);
        const auto target = mask_fraction(make_target(config.target, n, seed), config.fractions.front(), seed);
        const auto result = minimize(ansatz, target, cell_optimizer(config, seed));
        distances.push_back(result.final_distance);
        worst.distance = std::max(worst.distance, result.final_distance);
      }
      SweepCell cell;
      cell.ansatz = ansatz.label();
      cell.n_inputs = n;
      cell.param_count = ansatz.param_count();
      cell.repetitions = config.repetitions;
      double sum = 0.0;
      for (double d : distances) sum += d;
      cell.mean = sum / static_cast<double>(distances.size());
      double sq = 0.0;
      for (double d : distances) sq += (d - cell.mean) * (d - cell.mean);
      cell.variance = distances.size() > 1 ? sq / static_cast<double>(distances.size() - 1) : 0.0;
      cell.max = worst.distance;
      cell.bound = worst;
      cell.wall_seconds = seconds_since(start);
      cells.push_back(cell);
    }
  }
  return cells;
}

std::vector<GeneralizeCell> run_generalize(const ExperimentConfig& config) {
  config.validate();
  std::vector<GeneralizeCell> cells;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    for (double fraction : config.fractions) {
      for (auto kind : config.ansatze) {
        const auto ansatz = Ansatz::make(kind, n);
        for (int r = 0; r < config.repetitions; ++r) {
          const auto start = Clock::now();
          const std::uint64_t seed = cell_seed(config, n, r);
          const auto original = make_target(config.target, n, seed);
          const auto masked = mask_fraction(original, fraction, seed);
          const auto result = minimize(ansatz, masked, cell_optimizer(config, seed));
          const auto out = conditional_output(ansatz, result.best_params);
          GeneralizeCell cell;
          cell.ansatz = ansatz.label();
          cell.n_inputs = n;
          cell.param_count = ansatz.param_count();
          cell.fraction = fraction;
          cell.repetition = r;
          cell.seen = restricted_distance(original, masked.seen_mask(), out, Support::Seen).hellinger;
          if (!masked.fully_seen()) {
            std::vector<bool> unseen(masked.seen_mask().size());
            for (std::size_t b = 0; b < unseen.size(); ++b) unseen[b] = !masked.seen(b);
            cell.unseen = restricted_distance(original, unseen, out, Support::Unseen).hellinger;
          }
          cell.full = restricted_distance(original, out, Support::Full).hellinger;
          cell.bound = bound_of(result, ansatz);
          cell.wall_seconds = seconds_since(start);
          cells.push_back(cell);
        }
      }
    }
  }
  return cells;
}

std::vector<RatioCell> run_majority_ratios(const ExperimentConfig& config) {
  config.validate();
  std::vector<RatioCell> cells;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    for (double fraction : config.fractions) {
      for (auto kind : config.ansatze) {
        const auto ansatz = Ansatz::make(kind, n);
        for (int r = 0; r < config.repetitions; ++r) {
          const auto start = Clock::now();
          const std::uint64_t seed = cell_seed(config, n, r);
          const auto rule = make_target(config.target, n, seed);
          const auto masked = mask_fraction(rule, fraction, seed);
          const auto result = minimize(ansatz, masked, cell_optimizer(config, seed));
          const auto out = conditional_output(ansatz, result.best_params);
          RatioCell cell;
          cell.ansatz = ansatz.label();
          cell.n_inputs = n;
          cell.param_count = ansatz.param_count();
          cell.fraction = fraction;
          cell.repetition = r;
          cell.report = sample_outcomes(rule, masked, out, config.outcomes, seed);
          cell.expected = expected_outcomes(rule, masked, out);
          cell.bound = bound_of(result, ansatz);
          cell.wall_seconds = seconds_since(start);
          cells.push_back(cell);
        }
      }
    }
  }
  return cells;
}

std::vector<GradientStats> run_bp_stats(const ExperimentConfig& config) {
  config.validate();
  std::vector<GradientStats> stats;
  if (config.bp_mode == "m") {
    const int n = config.n_max;
    const std::uint64_t seed = cell_seed(config, n, 0);
    return gradient_statistics_vs_params(n, make_target(config.target, n, seed), config.samples, seed);
  }
  for (auto kind : config.ansatze) {
    for (int n = config.n_min; n <= config.n_max; ++n) {
      const std::uint64_t seed = cell_seed(config, n, 0);
      stats.push_back(
          gradient_statistics(Ansatz::make(kind, n), make_target(config.target, n, seed), config.samples, seed));
    }
  }
  return stats;
}

EntropyRun run_entropy(const ExperimentConfig& config) {
  config.validate();
  EntropyRun run;
  for (auto kind : config.ansatze) {
    std::vector<CurvePoint> curve;
    for (int n = config.n_min; n <= config.n_max; ++n) {
      const auto stats = mean_entropy(Ansatz::make(kind, n), config.samples, cell_seed(config, n, 0));
      curve.push_back({static_cast<double>(n), stats.mean_entropy});
      run.stats.push_back(stats);
    }
    if (curve.size() >= 4) run.fits.emplace_back(std::string(to_string(kind)), fit_entropy_curve(curve));
  }
  return run;
}

CsvTable fit_table(const ExperimentConfig& config, const std::vector<FitCell>& cells) {
  auto table = table_with({"record", "bitstring", "output_bit", "seen", "target_prob", "output_prob", "objective",
                           "d_h", "d_h_seen", "bound", "bound_ok"});
  for (const auto& cell : cells) {
    const auto joint = output_joint(cell.output);
    for (std::uint64_t b = 0; b < cell.target.input_count(); ++b) {
      for (int a = 0; a < 2; ++a) {
        auto row = row_prefix(config, cell.ansatz, cell.n_inputs, cell.param_count);
        append(row, {"prob", Bitstring(b, cell.n_inputs).to_string(), std::to_string(a),
                     cell.seen[b] ? "1" : "0", format_double(cell.target.joint(b, a)),
                     format_double(joint[(b << 1) | static_cast<unsigned>(a)]), "", "", "", "", ""});
        table.add_row(std::move(row));
      }
    }
    auto row = row_prefix(config, cell.ansatz, cell.n_inputs, cell.param_count);
    append(row, {"summary", "", "", "", "", "", format_double(cell.result.final_distance),
                 format_double(cell.hellinger_full), format_double(cell.hellinger_seen),
                 format_double(cell.bound.bound), cell.bound.ok() ? "1" : "0"});
    table.add_row(std::move(row));
  }
  return table;
}

CsvTable sweep_table(const ExperimentConfig& config, const std::vector<SweepCell>& cells) {
  auto table = table_with({"target", "repetitions", "d_h_mean", "d_h_variance", "d_h_max", "bound", "bound_ok"});
  for (const auto& cell : cells) {
    auto row = row_prefix(config, cell.ansatz, cell.n_inputs, cell.param_count);
    append(row, {config.target.kind, std::to_string(cell.repetitions), format_double(cell.mean),
                 format_double(cell.variance), format_double(cell.max), format_double(cell.bound.bound),
                 cell.bound.ok() ? "1" : "0"});
    table.add_row(std::move(row));
  }
  return table;
}

CsvTable generalize_table(const ExperimentConfig& config, const std::vector<GeneralizeCell>& cells) {
  auto table = table_with({"target", "fraction", "repetition", "d_h_seen", "d_h_unseen", "d_h_full", "objective",
                           "bound", "bound_ok"});
  for (const auto& cell : cells) {
    auto row = row_prefix(config, cell.ansatz, cell.n_inputs, cell.param_count);
    append(row, {config.target.kind, format_double(cell.fraction), std::to_string(cell.repetition),
                 format_double(cell.seen), fraction_or_blank(cell.unseen), format_double(cell.full),
                 format_double(cell.bound.distance), format_double(cell.bound.bound), cell.bound.ok() ? "1" : "0"});
    table.add_row(std::move(row));
  }
  return table;
}

CsvTable ratio_table(const ExperimentConfig& config, const std::vector<RatioCell>& cells) {
  auto table = table_with({"fraction", "repetition", "n_o", "n_p", "n_n", "n_a", "ratio_p", "ratio_n", "ratio_a",
                           "expected_ratio_a", "objective", "bound", "bound_ok"});
  for (const auto& cell : cells) {
    const auto& r = cell.report;
    auto row = row_prefix(config, cell.ansatz, cell.n_inputs, cell.param_count);
    append(row, {format_double(cell.fraction), std::to_string(cell.repetition), std::to_string(r.n_o),
                 std::to_string(r.n_p), std::to_string(r.n_n), std::to_string(r.n_a()), format_double(r.ratio_p()),
                 format_double(r.ratio_n()), format_double(r.ratio_a()), format_double(cell.expected.a()),
                 format_double(cell.bound.distance), format_double(cell.bound.bound), cell.bound.ok() ? "1" : "0"});
    table.add_row(std::move(row));
  }
  return table;
}

CsvTable bp_table(const ExperimentConfig& config, const std::vector<GradientStats>& stats) {
  auto table = table_with({"samples", "mean_abs_gradient", "gradient_variance"});
  std::size_t i = 0;
  const auto per_kind = static_cast<std::size_t>(config.n_max - config.n_min + 1);
  for (const auto& s : stats) {
    std::string label;
    if (config.bp_mode == "m") {
      label = "linear+" + std::to_string(s.param_count - static_cast<std::size_t>(s.n_inputs) - 1);
    } else {
      label = to_string(config.ansatze[i++ / per_kind]);
    }
    auto row = row_prefix(config, label, s.n_inputs, s.param_count);
    append(row, {std::to_string(s.sample_count), format_double(s.mean_abs_gradient),
                 format_double(s.gradient_variance)});
    table.add_row(std::move(row));
  }
  return table;
}

CsvTable entropy_table(const ExperimentConfig& config, const EntropyRun& run) {
  auto table = table_with({"samples", "mean_entropy"});
  std::size_t i = 0;
  const auto per_kind = static_cast<std::size_t>(config.n_max - config.n_min + 1);
  for (const auto& s : run.stats) {
    const auto kind = config.ansatze[i++ / per_kind];
    auto row = row_prefix(config, to_string(kind), s.n_inputs, s.param_count);
    append(row, {std::to_string(s.sample_count), format_double(s.mean_entropy)});
    table.add_row(std::move(row));
  }
  return table;
}

namespace {

template <typename Cells>
void record_cells(ExperimentOutput& output, const Cells& cells) {
  auto& times = output.sidecar["cell_wall_seconds"] = nlohmann::json::array();
  for (const auto& cell : cells) {
    times.push_back(cell.wall_seconds);
    if (!cell.bound.ok()) ++output.bound_violations;
  }
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  const auto start = Clock::now();
  ExperimentOutput output;
  output.sidecar = nlohmann::json::object();
  switch (config.experiment) {
    case Experiment::Fit: {
      const auto cells = run_fit(config);
      output.table = fit_table(config, cells);
      record_cells(output, cells);
      break;
    }
    case Experiment::Sweep: {
      const auto cells = run_sweep(config);
      output.table = sweep_table(config, cells);
      record_cells(output, cells);
      break;
    }
    case Experiment::Generalize: {
      const auto cells = run_generalize(config);
      output.table = generalize_table(config, cells);
      record_cells(output, cells);
      break;
    }
    case Experiment::MajorityRatios: {
      const auto cells = run_majority_ratios(config);
      output.table = ratio_table(config, cells);
      record_cells(output, cells);
      break;
    }
    case Experiment::BpStats:
      output.table = bp_table(config, run_bp_stats(config));
      break;
    case Experiment::Entropy: {
      const auto run = run_entropy(config);
      output.table = entropy_table(config, run);
      auto& fits = output.sidecar["fits"] = nlohmann::json::array();
      for (const auto& [kind, fit] : run.fits) {
        fits.push_back({{"ansatz", kind},
                        {"a", fit.a},
                        {"b", fit.b},
                        {"c", fit.c},
                        {"rate", fit.rate},
                        {"residual", fit.residual},
                        {"converged", fit.converged},
                        {"degenerate", fit.degenerate}});
      }
      break;
    }
    case Experiment::Validate:
      throw ConfigError("validate is not a table experiment");
  }
  output.sidecar["wall_seconds"] = seconds_since(start);
  output.sidecar["bound_violations"] = output.bound_violations;
  return output;
}

void write_output(const ExperimentConfig& config, const ExperimentOutput& output) {
  output.table.write(config.output);
  nlohmann::json sidecar = output.sidecar;
  sidecar["config"] = config_to_json(config);
  auto json_path = config.output;
  json_path.replace_extension(".json");
  std::ofstream out(json_path);
  if (!out) throw ConfigError("cannot write " + json_path.string());
  out << sidecar.dump(2) << '\n';
}

void apply_paper_scale(ExperimentConfig& config) {
  config.n_max = std::max(config.n_max, 16);
  config.repetitions = std::max(config.repetitions, 100);
}

}  // namespace qic
