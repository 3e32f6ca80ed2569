#include "brinkstab/csvio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "brinkstab/errors.hpp"

namespace brinkstab::csv {

std::string format(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

Table read(const std::string& text) {
  Table t;
  std::istringstream is(text);
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!have_header) {
      t.header = cells;
      have_header = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      if (c == "inf") row.push_back(std::numeric_limits<double>::infinity());
      else if (c == "-inf") row.push_back(-std::numeric_limits<double>::infinity());
      else {
        try {
          row.push_back(std::stod(c));
        } catch (...) {
          row.push_back(std::numeric_limits<double>::quiet_NaN());
        }
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("csv: cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return read(os.str());
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("csv: cannot write '" + path + "'");
  f << contents;
}

}  // namespace brinkstab::csv
