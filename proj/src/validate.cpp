#include "qic/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qic/gate_oracle.hpp"
#include "qic/metrics.hpp"
#include "qic/optimizer.hpp"
#include "qic/rng.hpp"
#include "qic/targets.hpp"

namespace qic {

namespace {

constexpr AnsatzKind kKinds[] = {AnsatzKind::Linear, AnsatzKind::Quadratic, AnsatzKind::Exponential};

ParameterVector random_params(std::size_t m, Rng& rng) {
  ParameterVector p(m);
  for (std::size_t k = 0; k < m; ++k) p[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return p;
}

// Max entrywise deviation allowing one global sign.
double signed_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    plus = std::max(plus, std::abs(a[i] - b[i]));
    minus = std::max(minus, std::abs(a[i] + b[i]));
  }
  return std::min(plus, minus);
}

void finish(SuiteResult& suite, std::chrono::steady_clock::time_point start) {
  suite.passed = suite.failures == 0 && suite.checks > 0;
  suite.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void note_failure(SuiteResult& suite, const std::string& what) {
  ++suite.failures;
  if (suite.failures <= 5) {
    if (!suite.detail.empty()) suite.detail += "; ";
    suite.detail += what;
  }
}

SuiteResult make_suite(std::string name, double tolerance) {
  SuiteResult suite;
  suite.name = std::move(name);
  suite.tolerance = tolerance;
  return suite;
}

std::string cell_name(AnsatzKind kind, int n) {
  return std::string(to_string(kind)) + " N=" + std::to_string(n);
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json doc;
  doc["passed"] = passed();
  auto& list = doc["suites"] = nlohmann::json::array();
  for (const auto& s : suites) {
    list.push_back({{"name", s.name},
                    {"passed", s.passed},
                    {"checks", s.checks},
                    {"failures", s.failures},
                    {"max_error", s.max_error},
                    {"tolerance", s.tolerance},
                    {"detail", s.detail},
                    {"wall_seconds", s.wall_seconds}});
  }
  return doc;
}

SuiteResult check_oracle_equivalence(const ValidationOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult suite = make_suite("oracle_equivalence", 1e-10);
  const StatevectorFn analytic =
      options.analytic ? options.analytic
                       : StatevectorFn([](const Ansatz& a, const ParameterVector& p) { return statevector(a, p); });
  Rng rng(options.seed, Stream::MonteCarlo, 1);
  for (auto kind : kKinds) {
    for (int n = 2; n <= options.oracle_max_inputs; ++n) {
      const auto ansatz = Ansatz::make(kind, n);
      double worst = 0.0;
      for (int d = 0; d < options.oracle_draws; ++d) {
        const auto params = random_params(ansatz.param_count(), rng);
        const auto reference = gate_level_oracle(ansatz, params);
        const auto fast = analytic(ansatz, params);
        ++suite.checks;
        const double dev =
            fast.size() == reference.size() ? signed_deviation(fast, reference) : std::numeric_limits<double>::infinity();
        worst = std::max(worst, dev);
        suite.max_error = std::max(suite.max_error, dev);
        if (!(dev < suite.tolerance)) {
          ++suite.failures;
        }
      }
      if (!(worst < suite.tolerance)) {
        std::ostringstream msg;
        msg << cell_name(kind, n) << " deviation " << worst;
        if (!suite.detail.empty()) suite.detail += "; ";
        suite.detail += msg.str();
      }
    }
  }
  finish(suite, start);
  return suite;
}

SuiteResult check_gradients(const ValidationOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult suite = make_suite("gradient_check", 1e-6);
  constexpr double h = 1e-6;
  Rng rng(options.seed, Stream::MonteCarlo, 2);
  for (auto kind : kKinds) {
    for (int n = 1; n <= options.gradient_max_inputs; ++n) {
      const auto ansatz = Ansatz::make(kind, n);
      for (int point = 0; point < options.gradient_points; ++point) {
        const auto target = random_target(n, mix_seed(options.seed, static_cast<std::uint64_t>(n),
                                                      static_cast<std::uint64_t>(point)));
        auto params = random_params(ansatz.param_count(), rng);
        const auto grad = gradient(ansatz, params, target);
        ++suite.checks;
        if (!grad) {
          note_failure(suite, cell_name(kind, n) + " gradient undefined at a random point");
          continue;
        }
        double worst = 0.0;
        for (std::size_t k = 0; k < params.size(); ++k) {
          const double saved = params[k];
          params[k] = saved + h;
          const double up = objective(ansatz, params, target);
          params[k] = saved - h;
          const double down = objective(ansatz, params, target);
          params[k] = saved;
          worst = std::max(worst, std::abs((up - down) / (2.0 * h) - (*grad)[k]));
        }
        suite.max_error = std::max(suite.max_error, worst);
        if (!(worst < suite.tolerance)) note_failure(suite, cell_name(kind, n) + " gradient error " + std::to_string(worst));
      }
    }
  }
  finish(suite, start);
  return suite;
}

SuiteResult check_exponential_exactness(const ValidationOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult suite = make_suite("exponential_exactness", 1e-8);
  for (int n = 1; n <= options.exact_max_inputs; ++n) {
    const auto ansatz = Ansatz::exponential(n);
    for (int t = 0; t < options.exact_targets; ++t) {
      const auto target =
          random_target(n, mix_seed(options.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t), 3));
      const auto params = solve_exponential(target);
      const auto out = conditional_output(ansatz, params);
      const double d = std::max(objective(ansatz, params, target),
                                restricted_distance(target, out, Support::Full).hellinger);
      ++suite.checks;
      suite.max_error = std::max(suite.max_error, d);
      if (!(d < suite.tolerance)) note_failure(suite, "N=" + std::to_string(n) + " d_H " + std::to_string(d));
    }
  }
  finish(suite, start);
  return suite;
}

SuiteResult check_bound_compliance(const ValidationOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult suite = make_suite("bound_compliance", 1e-9);
  OptimizeConfig config;
  config.restarts = 3;
  for (int n = 1; n <= 5; ++n) {
    const TargetDistribution targets[] = {gaussian_target(n), majority_target(n),
                                          random_target(n, mix_seed(options.seed, static_cast<std::uint64_t>(n), 4))};
    for (auto kind : kKinds) {
      const auto ansatz = Ansatz::make(kind, n);
      const double bound = worst_case_bound(ansatz.param_count(), n);
      for (const auto& target : targets) {
        config.seed = mix_seed(options.seed, static_cast<std::uint64_t>(n), suite.checks);
        const auto result = minimize(ansatz, target, config);
        ++suite.checks;
        const double excess = result.final_distance - bound;
        suite.max_error = std::max(suite.max_error, excess);
        if (excess > suite.tolerance) {
          note_failure(suite, cell_name(kind, n) + " distance " + std::to_string(result.final_distance) +
                                  " above bound " + std::to_string(bound));
        }
      }
    }
  }
  finish(suite, start);
  return suite;
}

ValidationReport run_validate(const ValidationOptions& options) {
  ValidationReport report;
  report.suites.push_back(check_oracle_equivalence(options));
  report.suites.push_back(check_gradients(options));
  report.suites.push_back(check_exponential_exactness(options));
  report.suites.push_back(check_bound_compliance(options));
  return report;
}

}  // namespace qic
