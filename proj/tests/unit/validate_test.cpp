#include "qic/validate.hpp"

#include <gtest/gtest.h>

#include "qic/ansatz.hpp"

TEST(Validate, AllSuitesPass) {
  const auto report = qic::run_validate();
  ASSERT_EQ(report.suites.size(), 4u);
  for (const auto& s : report.suites) {
    EXPECT_TRUE(s.passed) << s.name << ": " << s.detail;
    EXPECT_GT(s.checks, 0u);
  }
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.to_json()["passed"], true);
}

// Flipping the sign of one quadratic slot must be caught by the oracle suite.
TEST(Validate, PerturbedSignConventionFails) {
  qic::ValidationOptions options;
  options.oracle_draws = 5;
  options.analytic = [](const qic::Ansatz& ansatz, const qic::ParameterVector& params) {
    auto p = params;
    if (ansatz.param_count() > static_cast<std::size_t>(ansatz.n_inputs()) + 1) {
      const auto last = ansatz.n_inputs() + 1;
      p[static_cast<std::size_t>(last)] = -p[static_cast<std::size_t>(last)];
    }
    return qic::statevector(ansatz, p);
  };
  const auto suite = qic::check_oracle_equivalence(options);
  EXPECT_FALSE(suite.passed);
  EXPECT_GT(suite.failures, 0u);
  EXPECT_FALSE(suite.detail.empty());
}

TEST(Validate, UnperturbedOracleSuitePasses) {
  qic::ValidationOptions options;
  options.oracle_draws = 5;
  EXPECT_TRUE(qic::check_oracle_equivalence(options).passed);
}
