#pragma once

#include <string>
#include <vector>

namespace brinkstab::svg {

struct Series {
  std::string label;
  std::vector<double> x, y;
};

struct PlotOptions {
  std::string title, xlabel, ylabel;
  bool log_x = false;
  bool log_y = false;
  int width = 720;
  int height = 480;
};

/// Standalone SVG 1.1 line plot (no display server involved). Non-finite
/// samples break the polyline. Throws UsageError when nothing is drawable.
std::string line_plot(const std::vector<Series>& series, const PlotOptions& opts);

}  // namespace brinkstab::svg
