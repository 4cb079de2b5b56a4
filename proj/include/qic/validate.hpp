#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qic/ansatz.hpp"

namespace qic {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t checks = 0;
  std::size_t failures = 0;
  /// Largest error seen (suite-specific units).
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double wall_seconds = 0.0;
};

struct ValidationReport {
  std::vector<SuiteResult> suites;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Replaceable analytic simulator, so a perturbed implementation can be
/// checked against the gate-level reference.
using StatevectorFn = std::function<std::vector<double>(const Ansatz&, const ParameterVector&)>;

struct ValidationOptions {
  StatevectorFn analytic;  ///< defaults to statevector()
  std::uint64_t seed = 2024;
  int oracle_max_inputs = 5;
  int oracle_draws = 50;
  int gradient_max_inputs = 6;
  int gradient_points = 20;
  int exact_max_inputs = 6;
  int exact_targets = 20;
};

/// Analytic vs gate-level amplitudes, up to one global sign; tolerance 1e-10.
SuiteResult check_oracle_equivalence(const ValidationOptions& options = {});
/// Analytic gradient vs central differences (step 1e-6); tolerance 1e-6.
SuiteResult check_gradients(const ValidationOptions& options = {});
/// solve_exponential reaches d_H < 1e-8 on random targets.
SuiteResult check_exponential_exactness(const ValidationOptions& options = {});
/// Small fits of every ansatz stay within worst_case_bound.
SuiteResult check_bound_compliance(const ValidationOptions& options = {});

ValidationReport run_validate(const ValidationOptions& options = {});

}  // namespace qic
