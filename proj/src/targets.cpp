#include "qic/targets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "qic/bitphase.hpp"
#include "qic/csv.hpp"
#include "qic/errors.hpp"
#include "qic/rng.hpp"

namespace qic {

namespace {

std::size_t input_count_for(int n_inputs) {
  if (n_inputs < 1 || n_inputs > kMaxBitstringWidth) {
    throw DomainError("number of input qubits must lie in [1, 30], got " + std::to_string(n_inputs));
  }
  return std::size_t{1} << n_inputs;
}

}  // namespace

TargetDistribution TargetDistribution::from_conditionals(int n_inputs, std::vector<double> p0,
                                                         std::vector<bool> seen) {
  const std::size_t inputs = input_count_for(n_inputs);
  if (p0.size() != inputs) {
    throw DimensionError("expected " + std::to_string(inputs) + " conditionals, got " + std::to_string(p0.size()));
  }
  if (seen.empty()) seen.assign(inputs, true);
  if (seen.size() != inputs) throw DimensionError("seen mask length does not match 2^N");

  TargetDistribution t;
  t.n_inputs_ = n_inputs;
  t.seen_count_ = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
  if (t.seen_count_ == 0) throw DomainError("target distribution has no seen inputs");

  for (std::size_t b = 0; b < inputs; ++b) {
    if (!seen[b]) {
      p0[b] = 0.0;
      continue;
    }
    if (!(p0[b] >= 0.0 && p0[b] <= 1.0)) {
      throw DomainError("conditional p(0|b) outside [0, 1] for b=" + std::to_string(b));
    }
  }
  t.p0_ = std::move(p0);
  t.seen_ = std::move(seen);
  t.probs_.assign(2 * inputs, 0.0);
  const double weight = 1.0 / static_cast<double>(t.seen_count_);
  for (std::size_t b = 0; b < inputs; ++b) {
    if (!t.seen_[b]) continue;
    t.probs_[2 * b] = t.p0_[b] * weight;
    t.probs_[2 * b + 1] = (1.0 - t.p0_[b]) * weight;
  }
  return t;
}

double TargetDistribution::conditional(std::uint64_t b, int a) const {
  if (!seen_[b]) throw DomainError("conditional requested for unseen input " + std::to_string(b));
  return a == 0 ? p0_[b] : 1.0 - p0_[b];
}

TargetDistribution gaussian_target(int n_inputs, const GaussianOptions& options) {
  const std::size_t inputs = input_count_for(n_inputs);
  if (!(options.sigma2 > 0.0)) throw DomainError("gaussian width must be positive");
  const double center = options.center.value_or((n_inputs - 1) / 2.0);
  std::vector<double> p0(inputs);
  for (std::size_t n = 0; n < inputs; ++n) {
    const double d = static_cast<double>(n) - center;
    p0[n] = std::exp(-d * d / (2.0 * options.sigma2)) * std::numbers::inv_sqrtpi / std::numbers::sqrt2;
  }
  return TargetDistribution::from_conditionals(n_inputs, std::move(p0));
}

TargetDistribution majority_target(int n_inputs) {
  const std::size_t inputs = input_count_for(n_inputs);
  std::vector<double> p0(inputs);
  for (std::size_t n = 0; n < inputs; ++n) {
    const int ones = std::popcount(n);
    const int zeros = n_inputs - ones;
    p0[n] = zeros > ones ? 1.0 : (zeros == ones ? 0.5 : 0.0);
  }
  return TargetDistribution::from_conditionals(n_inputs, std::move(p0));
}

TargetDistribution random_target(int n_inputs, std::uint64_t seed) {
  const std::size_t inputs = input_count_for(n_inputs);
  Rng rng(seed, Stream::Target);
  std::vector<double> p0(inputs);
  for (auto& p : p0) p = rng.uniform();
  return TargetDistribution::from_conditionals(n_inputs, std::move(p0));
}

TargetDistribution mask_fraction(const TargetDistribution& target, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) throw DomainError("mask fraction must lie in [0, 1)");
  const std::size_t inputs = target.input_count();
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(inputs) + 1e-9));
  if (count >= target.seen_count()) {
    throw DomainError("masking " + std::to_string(count) + " inputs leaves no seen data");
  }
  std::vector<std::uint64_t> candidates;
  candidates.reserve(target.seen_count());
  for (std::uint64_t b = 0; b < inputs; ++b) {
    if (target.seen(b)) candidates.push_back(b);
  }
  // partial Fisher-Yates: the first `count` candidates are removed
  Rng rng(seed, Stream::Mask);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(candidates.size() - i));
    std::swap(candidates[i], candidates[j]);
  }
  std::vector<bool> seen = target.seen_mask();
  for (std::size_t i = 0; i < count; ++i) seen[candidates[i]] = false;
  std::vector<double> p0(target.conditional_zero().begin(), target.conditional_zero().end());
  return TargetDistribution::from_conditionals(target.n_inputs(), std::move(p0), std::move(seen));
}

std::vector<std::optional<double>> target_angles(const TargetDistribution& target) {
  std::vector<std::optional<double>> angles(target.input_count());
  for (std::uint64_t b = 0; b < target.input_count(); ++b) {
    if (!target.seen(b)) continue;
    const double p = std::clamp(target.conditional(b, 0), 0.0, 1.0);
    angles[b] = std::acos(std::sqrt(p));
  }
  return angles;
}

TargetDistribution read_target_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  int width = 0;
  std::map<std::uint64_t, std::array<double, 2>> weights;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_csv_line(line);
    if (!header_seen) {
      if (fields.size() != 3 || fields[0] != "bitstring" || fields[1] != "output_bit" || fields[2] != "weight") {
        throw ConfigError("target CSV must start with header 'bitstring,output_bit,weight'");
      }
      header_seen = true;
      continue;
    }
    auto fail = [&](const std::string& why) {
      throw ConfigError("target CSV line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() != 3) fail("expected 3 fields");
    Bitstring b(0, 1);
    try {
      b = Bitstring::parse(fields[0]);
    } catch (const std::exception& e) {
      fail(e.what());
    }
    if (width == 0) width = b.width();
    if (b.width() != width) fail("inconsistent bitstring width");
    if (fields[1] != "0" && fields[1] != "1") fail("output_bit must be 0 or 1");
    double w = 0.0;
    try {
      std::size_t used = 0;
      w = std::stod(fields[2], &used);
      if (used != fields[2].size()) fail("malformed weight");
    } catch (const std::invalid_argument&) {
      fail("malformed weight");
    } catch (const std::out_of_range&) {
      fail("weight out of range");
    }
    if (!(w >= 0.0) || !std::isfinite(w)) fail("weights must be finite and nonnegative");
    weights[b.value()][fields[1] == "1" ? 1 : 0] += w;
  }
  if (!header_seen || weights.empty()) throw ConfigError("target CSV contains no data rows");

  const std::size_t inputs = std::size_t{1} << width;
  std::vector<double> p0(inputs, 0.0);
  std::vector<bool> seen(inputs, false);
  for (const auto& [b, w] : weights) {
    const double total = w[0] + w[1];
    if (total <= 0.0) continue;
    p0[b] = w[0] / total;
    seen[b] = true;
  }
  if (std::none_of(seen.begin(), seen.end(), [](bool s) { return s; })) {
    throw ConfigError("target CSV has zero total weight");
  }
  return TargetDistribution::from_conditionals(width, std::move(p0), std::move(seen));
}

TargetDistribution load_target_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open target CSV '" + path.string() + "'");
  return read_target_csv(in);
}

void write_target_csv(std::ostream& out, const TargetDistribution& target) {
  out << "bitstring,output_bit,weight\n";
  for (std::uint64_t b = 0; b < target.input_count(); ++b) {
    if (!target.seen(b)) continue;
    const std::string bits = Bitstring(b, target.n_inputs()).to_string();
    for (int a = 0; a < 2; ++a) {
      out << bits << ',' << a << ',' << format_double(target.conditional(b, a)) << '\n';
    }
  }
}

std::string target_to_json(const TargetDistribution& target) {
  nlohmann::json j;
  j["n_inputs"] = target.n_inputs();
  j["conditional_p0"] = std::vector<double>(target.conditional_zero().begin(), target.conditional_zero().end());
  j["seen_mask"] = std::vector<bool>(target.seen_mask());
  j["probs"] = std::vector<double>(target.probs().begin(), target.probs().end());
  return j.dump();
}

TargetDistribution target_from_json(std::string_view json) {
  try {
    const auto j = nlohmann::json::parse(json);
    return TargetDistribution::from_conditionals(j.at("n_inputs").get<int>(),
                                                 j.at("conditional_p0").get<std::vector<double>>(),
                                                 j.at("seen_mask").get<std::vector<bool>>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid target JSON: ") + e.what());
  }
}

}  // namespace qic
