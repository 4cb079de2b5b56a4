#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qic {

/// Shortest round-trip decimal representation; identical on every platform.
std::string format_double(double value);

/// Splits one line on commas (no quoting; the formats here never need it).
std::vector<std::string> split_csv_line(std::string_view line);

/// A fixed-header table written as plain CSV.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;
  [[nodiscard]] std::string str() const;
};

}  // namespace qic
