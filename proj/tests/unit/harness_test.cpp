#include "qic/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "qic/errors.hpp"
#include "qic/metrics.hpp"

using qic::Experiment;
using qic::ExperimentConfig;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "qic_harness_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig quick(Experiment e) {
  auto config = qic::default_config(e);
  config.optimizer.restarts = 3;
  return config;
}

}  // namespace

TEST(Config, ParsesAndEchoes) {
  const auto doc = nlohmann::json::parse(R"({
    "experiment": "generalize",
    "ansatz": ["linear", "quadratic"],
    "n": [3, 5],
    "target": {"kind": "gaussian", "center": 2.5, "sigma2": 1.5},
    "fraction": [0.1, 0.3],
    "seed": 11,
    "repetitions": 2,
    "optimizer": {"restarts": 4, "init": "uniform"},
    "output": "out/gen.csv"
  })");
  const auto c = qic::config_from_json(doc);
  EXPECT_EQ(c.experiment, Experiment::Generalize);
  EXPECT_EQ(c.ansatze.size(), 2u);
  EXPECT_EQ(c.n_min, 3);
  EXPECT_EQ(c.n_max, 5);
  EXPECT_EQ(*c.target.gaussian.center, 2.5);
  EXPECT_EQ(c.fractions, (std::vector<double>{0.1, 0.3}));
  EXPECT_EQ(c.optimizer.restarts, 4);
  EXPECT_EQ(c.optimizer.init, qic::InitScheme::UniformRandom);
  EXPECT_EQ(c.output, "out/gen.csv");
  const auto again = qic::config_from_json(qic::config_to_json(c));
  EXPECT_EQ(qic::config_to_json(again), qic::config_to_json(c));
}

TEST(Config, Errors) {
  EXPECT_THROW(qic::config_from_json(nlohmann::json::parse(R"({"experiment": "nope"})")), qic::ConfigError);
  EXPECT_THROW(qic::config_from_json(nlohmann::json::parse(R"({"ansatz": "cubic"})")), qic::ConfigError);
  EXPECT_THROW(qic::config_from_json(nlohmann::json::parse(R"({"n": "three"})")), qic::ConfigError);
  EXPECT_THROW(qic::config_from_json(nlohmann::json::parse("[1]")), qic::ConfigError);
  EXPECT_THROW(qic::load_config(scratch("missing.json")), qic::ConfigError);

  auto c = quick(Experiment::Fit);
  c.n_max = 17;
  c.ansatze = {qic::AnsatzKind::Quadratic};
  EXPECT_THROW(c.validate(), qic::ConfigError);
  c = quick(Experiment::Fit);
  c.target.kind = "csv";
  c.target.csv_path = scratch("nothing.csv");
  EXPECT_THROW(c.validate(), qic::ConfigError);
  c = quick(Experiment::MajorityRatios);
  c.target.kind = "gaussian";
  EXPECT_THROW(c.validate(), qic::ConfigError);
  c = quick(Experiment::Fit);
  c.fractions = {1.0};
  EXPECT_THROW(c.validate(), qic::ConfigError);
}

TEST(Config, CsvPathRelativeToConfig) {
  const auto path = scratch("with_csv.json");
  std::ofstream(path) << R"({"experiment": "fit", "target": {"kind": "csv", "csv": ")" << QIC_TEST_DATA_DIR
                      << R"(/majority3.csv"}})";
  const auto c = qic::load_config(path);
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(qic::make_target(c.target, 3, 0).n_inputs(), 3);
  EXPECT_THROW(qic::make_target(c.target, 4, 0), qic::ConfigError);
}

TEST(Fit, GaussianLinearSchema) {
  auto c = quick(Experiment::Fit);
  const auto cells = qic::run_fit(c);
  ASSERT_EQ(cells.size(), 1u);
  const auto table = qic::fit_table(c, cells);
  EXPECT_EQ(table.rows.size(), 17u);
  EXPECT_EQ(table.header.front(), "experiment");
  EXPECT_EQ(table.rows.back()[5], "summary");
  EXPECT_TRUE(cells[0].bound.ok());
  double total = 0.0;
  for (std::size_t i = 0; i < 16; ++i) total += std::stod(table.rows[i][10]);
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Fit, MajorityQuadraticBeatsLinear) {
  auto c = quick(Experiment::Fit);
  c.target.kind = "majority";
  c.ansatze = {qic::AnsatzKind::Linear, qic::AnsatzKind::Quadratic};
  const auto cells = qic::run_fit(c);
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_LT(cells[1].result.final_distance, cells[0].result.final_distance);
}

TEST(Fit, ZeroMaskSeenEqualsFull) {
  const auto cells = qic::run_fit(quick(Experiment::Fit));
  EXPECT_NEAR(cells[0].hellinger_seen, cells[0].hellinger_full, 1e-12);
}

TEST(Sweep, MajorityShape) {
  auto c = quick(Experiment::Sweep);
  c.n_max = 5;
  const auto cells = qic::run_sweep(c);
  ASSERT_EQ(cells.size(), 8u);
  for (std::size_t i = 0; i < cells.size(); i += 2) {
    EXPECT_LE(cells[i + 1].mean, cells[i].mean + 1e-9) << cells[i].n_inputs;
    EXPECT_TRUE(cells[i].bound.ok());
    EXPECT_TRUE(cells[i + 1].bound.ok());
  }
}

TEST(Sweep, RandomRepetitions) {
  auto c = quick(Experiment::Sweep);
  c.target.kind = "random";
  c.ansatze = {qic::AnsatzKind::Linear};
  c.n_min = c.n_max = 3;
  c.repetitions = 4;
  const auto cells = qic::run_sweep(c);
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].repetitions, 4);
  EXPECT_GT(cells[0].variance, 0.0);
  EXPECT_GE(cells[0].max, cells[0].mean);
}

TEST(Generalize, ZeroFractionHasNoUnseen) {
  auto c = quick(Experiment::Generalize);
  c.n_min = c.n_max = 4;
  c.fractions = {0.0, 0.5};
  const auto cells = qic::run_generalize(c);
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_FALSE(cells[0].unseen.has_value());
  EXPECT_NEAR(cells[0].seen, cells[0].full, 1e-12);
  ASSERT_TRUE(cells[1].unseen.has_value());
  EXPECT_GE(*cells[1].unseen, 0.0);
  EXPECT_LE(*cells[1].unseen, 1.0);
  const auto table = qic::generalize_table(c, cells);
  EXPECT_EQ(table.rows[0][9], "");
}

TEST(Ratios, CountsAddUp) {
  auto c = quick(Experiment::MajorityRatios);
  c.fractions = {0.0, 0.7};
  const auto cells = qic::run_majority_ratios(c);
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(cells[0].report.n_n, 0u);
  for (const auto& cell : cells) {
    const auto& r = cell.report;
    EXPECT_EQ(r.n_o, 1024u);
    EXPECT_LE(r.n_a(), r.n_o);
    EXPECT_DOUBLE_EQ(r.ratio_p() + r.ratio_n(), r.ratio_a());
  }
}

// Sampled counts against exhaustive enumeration, within 4 binomial sigmas.
TEST(Ratios, SamplingMatchesEnumeration) {
  for (int n = 1; n <= 4; ++n) {
    const auto rule = qic::majority_target(n);
    const auto masked = qic::mask_fraction(rule, n > 1 ? 0.5 : 0.0, 3);
    const auto ansatz = qic::Ansatz::linear(n);
    qic::ParameterVector p(ansatz.param_count());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = 0.3 * static_cast<double>(k + 1);
    const auto out = qic::conditional_output(ansatz, p);
    const std::size_t draws = 20000;
    const auto report = qic::sample_outcomes(rule, masked, out, draws, 5);
    const auto expected = qic::expected_outcomes(rule, masked, out);
    const auto check = [&](double count, double prob) {
      const double sigma = std::sqrt(draws * prob * (1 - prob));
      EXPECT_LE(std::abs(count - draws * prob), 4 * sigma + 1e-9) << "N=" << n;
    };
    check(static_cast<double>(report.n_p), expected.p);
    check(static_cast<double>(report.n_n), expected.n);
    check(static_cast<double>(report.n_a()), expected.a());
  }
}

TEST(BpStats, ModesAndLabels) {
  auto c = quick(Experiment::BpStats);
  c.n_min = 3;
  c.n_max = 4;
  c.samples = 100;
  const auto by_n = qic::run_bp_stats(c);
  EXPECT_EQ(by_n.size(), 2u);
  c.bp_mode = "m";
  const auto by_m = qic::run_bp_stats(c);
  ASSERT_EQ(by_m.size(), 7u);
  const auto table = qic::bp_table(c, by_m);
  EXPECT_EQ(table.rows.front()[2], "linear+0");
  EXPECT_EQ(table.rows.back()[2], "linear+6");
}

TEST(Entropy, TableAndFit) {
  auto c = quick(Experiment::Entropy);
  c.n_min = 2;
  c.n_max = 6;
  c.samples = 200;
  const auto run = qic::run_entropy(c);
  EXPECT_EQ(run.stats.size(), 5u);
  ASSERT_EQ(run.fits.size(), 1u);
  EXPECT_EQ(qic::entropy_table(c, run).rows.size(), 5u);
}

TEST(Output, ByteIdenticalReruns) {
  auto c = quick(Experiment::Generalize);
  c.n_min = 3;
  c.n_max = 4;
  c.fractions = {0.3};
  c.repetitions = 2;
  c.output = scratch("gen_a.csv");
  const auto first = qic::run_experiment(c);
  qic::write_output(c, first);
  c.output = scratch("gen_b.csv");
  qic::write_output(c, qic::run_experiment(c));
  EXPECT_EQ(slurp(scratch("gen_a.csv")), slurp(scratch("gen_b.csv")));
  EXPECT_TRUE(std::filesystem::exists(scratch("gen_a.json")));
  const auto sidecar = nlohmann::json::parse(slurp(scratch("gen_a.json")));
  EXPECT_EQ(sidecar["config"]["experiment"], "generalize");
  EXPECT_TRUE(sidecar.contains("wall_seconds"));
  EXPECT_EQ(first.bound_violations, 0u);
}

TEST(Output, DefaultDirectoryFromEnvironment) {
  ::setenv("QIC_OUTPUT_DIR", "/tmp/qic_env_dir", 1);
  EXPECT_EQ(qic::default_output_path(Experiment::Sweep), std::filesystem::path("/tmp/qic_env_dir/sweep.csv"));
  ::unsetenv("QIC_OUTPUT_DIR");
  EXPECT_EQ(qic::default_output_path(Experiment::Sweep), std::filesystem::path("./sweep.csv"));
}
