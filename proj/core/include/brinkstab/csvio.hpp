#pragma once

#include <string>
#include <vector>

namespace brinkstab::csv {

/// Render a double with 17 significant digits (round-trip exact, diffable).
std::string format(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  ///< -1 if absent
  bool empty() const { return rows.empty(); }
};

/// Parse a numeric CSV with a header line. Non-numeric cells become NaN;
/// "inf"/"-inf" parse to infinities.
Table read(const std::string& text);
Table read_file(const std::string& path);

void write_file(const std::string& path, const std::string& contents);

}  // namespace brinkstab::csv
