// qic: run imputation-circuit experiments and write plot-ready CSV tables.
//
// Exit codes: 0 success, 1 validation failure, 2 configuration error.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qic/errors.hpp"
#include "qic/harness.hpp"
#include "qic/validate.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> ansatze;
  std::string n;
  std::vector<double> fractions;
  std::string target;
  std::string target_csv;
  std::optional<double> center;
  std::optional<double> sigma2;
  std::optional<int> repetitions;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> outcomes;
  std::optional<int> restarts;
  std::string init;
  std::string mode;
  bool paper_scale = false;
};

int parse_int(const std::string& text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw qic::ConfigError("bad integer '" + text + "'");
  return value;
}

// "5" or "3:8" (inclusive).
void apply_n(qic::ExperimentConfig& config, const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    config.n_min = config.n_max = parse_int(text);
  } else {
    config.n_min = parse_int(text.substr(0, colon));
    config.n_max = parse_int(text.substr(colon + 1));
  }
}

qic::ExperimentConfig resolve(qic::Experiment experiment, const Flags& f) {
  qic::ExperimentConfig config;
  if (!f.config.empty()) {
    config = qic::load_config(f.config);
    if (config.experiment != experiment) {
      throw qic::ConfigError("config is for experiment '" + std::string(qic::to_string(config.experiment)) + "'");
    }
  } else {
    config = qic::default_config(experiment);
  }
  if (f.paper_scale) qic::apply_paper_scale(config);
  if (f.seed) config.seed = *f.seed;
  if (!f.out.empty()) config.output = f.out;
  if (!f.ansatze.empty()) {
    config.ansatze.clear();
    for (const auto& a : f.ansatze) config.ansatze.push_back(qic::parse_ansatz_kind(a));
  }
  if (!f.n.empty()) apply_n(config, f.n);
  if (!f.fractions.empty()) config.fractions = f.fractions;
  if (!f.target.empty()) config.target.kind = f.target;
  if (!f.target_csv.empty()) {
    config.target.kind = "csv";
    config.target.csv_path = f.target_csv;
  }
  if (f.center) config.target.gaussian.center = *f.center;
  if (f.sigma2) config.target.gaussian.sigma2 = *f.sigma2;
  if (f.repetitions) config.repetitions = *f.repetitions;
  if (f.samples) config.samples = *f.samples;
  if (f.outcomes) config.outcomes = *f.outcomes;
  if (f.restarts) config.optimizer.restarts = *f.restarts;
  if (!f.init.empty()) config.optimizer.init = qic::parse_init_scheme(f.init);
  if (!f.mode.empty()) config.bp_mode = f.mode;
  config.validate();
  return config;
}

int run_table(qic::Experiment experiment, const Flags& flags) {
  const auto config = resolve(experiment, flags);
  const auto output = qic::run_experiment(config);
  qic::write_output(config, output);
  std::cout << "wrote " << output.table.rows.size() << " rows to " << config.output.string() << '\n';
  if (output.sidecar.contains("fits")) {
    for (const auto& fit : output.sidecar["fits"]) std::cout << "fit " << fit.dump() << '\n';
  }
  if (output.bound_violations > 0) {
    std::cerr << "error: " << output.bound_violations << " results exceed the worst-case bound\n";
    return kExitValidation;
  }
  return 0;
}

int run_validation(const Flags& flags) {
  qic::ValidationOptions options;
  if (flags.seed) options.seed = *flags.seed;
  const auto report = qic::run_validate(options);
  const auto doc = report.to_json();
  std::cout << doc.dump(2) << '\n';
  if (!flags.out.empty()) {
    std::ofstream out(flags.out);
    if (!out) throw qic::ConfigError("cannot write " + flags.out);
    out << doc.dump(2) << '\n';
  }
  return report.passed() ? 0 : kExitValidation;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON experiment config")->check(CLI::ExistingFile);
  sub->add_option("--seed", f.seed, "base seed");
  sub->add_option("--out", f.out, "output CSV path");
}

void add_experiment(CLI::App* sub, Flags& f) {
  add_common(sub, f);
  sub->add_option("--ansatz", f.ansatze, "linear, quadratic or exponential (repeatable)");
  sub->add_option("--n", f.n, "input qubits, N or MIN:MAX");
  sub->add_option("--fraction", f.fractions, "mask fraction(s) in [0, 1)")->delimiter(',');
  sub->add_option("--target", f.target, "gaussian, majority, random or csv");
  sub->add_option("--target-csv", f.target_csv, "target CSV (bitstring,output_bit,weight)");
  sub->add_option("--center", f.center, "Gaussian center");
  sub->add_option("--sigma2", f.sigma2, "Gaussian variance");
  sub->add_option("--repetitions", f.repetitions, "random targets or mask draws per cell");
  sub->add_option("--samples", f.samples, "Monte-Carlo samples");
  sub->add_option("--outcomes", f.outcomes, "sampled outcomes per run");
  sub->add_option("--restarts", f.restarts, "optimizer restarts");
  sub->add_option("--init", f.init, "zeros, uniform or small");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum imputation circuit experiments"};
  app.require_subcommand(1);
  Flags flags;

  struct Entry {
    const char* name;
    const char* help;
    qic::Experiment experiment;
  };
  const Entry entries[] = {
      {"fit", "optimize one target and dump probabilities", qic::Experiment::Fit},
      {"sweep", "distance vs N", qic::Experiment::Sweep},
      {"generalize", "seen/unseen/full distances under masking", qic::Experiment::Generalize},
      {"majority-ratios", "sampled rule-correct ratios", qic::Experiment::MajorityRatios},
      {"bp-stats", "gradient statistics", qic::Experiment::BpStats},
      {"entropy", "mean target-qubit entropy and fit", qic::Experiment::Entropy},
  };
  std::vector<std::pair<CLI::App*, qic::Experiment>> subs;
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_experiment(sub, flags);
    if (e.experiment == qic::Experiment::Sweep) {
      sub->add_flag("--paper-scale", flags.paper_scale, "N up to 16 with 100 random targets (slow)");
    }
    if (e.experiment == qic::Experiment::BpStats) {
      sub->add_option("--mode", flags.mode, "n (sweep N) or m (sweep pair gates at max N)");
    }
    subs.emplace_back(sub, e.experiment);
  }
  auto* validate = app.add_subcommand("validate", "run the self-check suites");
  validate->add_option("--seed", flags.seed, "base seed");
  validate->add_option("--out", flags.out, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (validate->parsed()) return run_validation(flags);
    for (const auto& [sub, experiment] : subs) {
      if (sub->parsed()) return run_table(experiment, flags);
    }
  } catch (const qic::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::length_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitConfig;
}
