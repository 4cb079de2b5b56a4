#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qic/analysis.hpp"
#include "qic/ansatz.hpp"
#include "qic/csv.hpp"
#include "qic/optimizer.hpp"
#include "qic/targets.hpp"

namespace qic {

enum class Experiment { Fit, Sweep, Generalize, MajorityRatios, BpStats, Entropy, Validate };

std::string_view to_string(Experiment experiment);
Experiment parse_experiment(std::string_view name);

struct TargetSpec {
  /// gaussian, majority, random or csv.
  std::string kind = "gaussian";
  GaussianOptions gaussian;
  std::filesystem::path csv_path;
};

/// Caps applied when loading a config.
inline constexpr int kMaxInputs = 20;
inline constexpr int kMaxQuadraticInputs = 16;
inline constexpr int kMaxExponentialInputs = 14;

struct ExperimentConfig {
  Experiment experiment = Experiment::Fit;
  std::vector<AnsatzKind> ansatze{AnsatzKind::Linear};
  int n_min = 3;
  int n_max = 3;
  TargetSpec target;
  std::vector<double> fractions{0.0};
  std::uint64_t seed = 0;
  /// Random targets per N (sweep) or mask draws per cell (generalize, ratios).
  int repetitions = 1;
  std::size_t samples = 1000;
  std::size_t outcomes = 1024;
  /// bp_stats only: "n" sweeps N, "m" sweeps pair gates at N = n_max.
  std::string bp_mode = "n";
  OptimizeConfig optimizer;
  std::filesystem::path output;

  /// Throws ConfigError on inconsistent or out-of-range settings.
  void validate() const;
};

/// Per-experiment defaults used when a key is absent from the config.
ExperimentConfig default_config(Experiment experiment);

/// Reads a JSON config. Missing keys keep their defaults; `output` defaults to
/// `<experiment>.csv` under $QIC_OUTPUT_DIR (or the working directory).
ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const ExperimentConfig& config);

std::filesystem::path default_output_path(Experiment experiment);

/// Builds the target for one N; `seed` only matters for random targets.
TargetDistribution make_target(const TargetSpec& spec, int n_inputs, std::uint64_t seed);

/// Fit quality checked against worst_case_bound.
struct BoundCheck {
  double distance = 0.0;
  double bound = 1.0;
  [[nodiscard]] bool ok() const { return distance <= bound + 1e-9; }
};

struct FitCell {
  std::string ansatz;
  int n_inputs = 0;
  std::size_t param_count = 0;
  /// Unmasked target and the inputs the fit saw.
  TargetDistribution target;
  std::vector<bool> seen;
  ConditionalOutput output;
  OptimizeResult result;
  double hellinger_full = 0.0;
  double hellinger_seen = 0.0;
  BoundCheck bound;
  double wall_seconds = 0.0;
};

struct SweepCell {
  std::string ansatz;
  int n_inputs = 0;
  std::size_t param_count = 0;
  int repetitions = 0;
  double mean = 0.0;
  double variance = 0.0;
  double max = 0.0;
  BoundCheck bound;
  double wall_seconds = 0.0;
};

struct GeneralizeCell {
  std::string ansatz;
  int n_inputs = 0;
  std::size_t param_count = 0;
  double fraction = 0.0;
  int repetition = 0;
  double seen = 0.0;
  std::optional<double> unseen;
  double full = 0.0;
  BoundCheck bound;
  double wall_seconds = 0.0;
};

struct SamplingReport {
  std::size_t n_o = 0;
  std::size_t n_p = 0;
  std::size_t n_n = 0;
  [[nodiscard]] std::size_t n_a() const { return n_p + n_n; }
  [[nodiscard]] double ratio_p() const { return static_cast<double>(n_p) / static_cast<double>(n_o); }
  [[nodiscard]] double ratio_n() const { return static_cast<double>(n_n) / static_cast<double>(n_o); }
  [[nodiscard]] double ratio_a() const { return static_cast<double>(n_a()) / static_cast<double>(n_o); }
};

/// Exact outcome probabilities behind a SamplingReport.
struct ExpectedRatios {
  double p = 0.0;
  double n = 0.0;
  [[nodiscard]] double a() const { return p + n; }
};

struct RatioCell {
  std::string ansatz;
  int n_inputs = 0;
  std::size_t param_count = 0;
  double fraction = 0.0;
  int repetition = 0;
  SamplingReport report;
  ExpectedRatios expected;
  BoundCheck bound;
  double wall_seconds = 0.0;
};

struct EntropyRun {
  std::vector<EntropyStats> stats;
  std::vector<std::pair<std::string, ExpFit>> fits;
};

/**
 * Draws `outcomes` pairs (b, a) from the circuit joint (uniform b, then a
 * from the circuit conditional) and classifies each against `rule`:
 * outcomes with rule-correct a count as N_p when b is seen in `masked` and
 * as N_n otherwise. Rule-violating outcomes fall outside N_a.
 */
SamplingReport sample_outcomes(const TargetDistribution& rule, const TargetDistribution& masked,
                               const ConditionalOutput& out, std::size_t outcomes, std::uint64_t seed);
ExpectedRatios expected_outcomes(const TargetDistribution& rule, const TargetDistribution& masked,
                                 const ConditionalOutput& out);

std::vector<FitCell> run_fit(const ExperimentConfig& config);
std::vector<SweepCell> run_sweep(const ExperimentConfig& config);
std::vector<GeneralizeCell> run_generalize(const ExperimentConfig& config);
std::vector<RatioCell> run_majority_ratios(const ExperimentConfig& config);
std::vector<GradientStats> run_bp_stats(const ExperimentConfig& config);
EntropyRun run_entropy(const ExperimentConfig& config);

CsvTable fit_table(const ExperimentConfig& config, const std::vector<FitCell>& cells);
CsvTable sweep_table(const ExperimentConfig& config, const std::vector<SweepCell>& cells);
CsvTable generalize_table(const ExperimentConfig& config, const std::vector<GeneralizeCell>& cells);
CsvTable ratio_table(const ExperimentConfig& config, const std::vector<RatioCell>& cells);
CsvTable bp_table(const ExperimentConfig& config, const std::vector<GradientStats>& stats);
CsvTable entropy_table(const ExperimentConfig& config, const EntropyRun& run);

struct ExperimentOutput {
  CsvTable table;
  /// Extra sidecar fields (fits, wall time).
  nlohmann::json sidecar;
  /// Number of optimized results above the worst-case bound.
  std::size_t bound_violations = 0;
};

/// Runs any experiment except validate and returns its table.
ExperimentOutput run_experiment(const ExperimentConfig& config);

/// Writes the CSV to config.output and `<output>.json` with the resolved config.
void write_output(const ExperimentConfig& config, const ExperimentOutput& output);

/// Paper-scale sweep: N up to 16, 100 random targets per N.
void apply_paper_scale(ExperimentConfig& config);

}  // namespace qic
