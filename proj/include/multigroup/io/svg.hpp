#pragma once

#include <string>
#include <utility>
#include <vector>

namespace multigroup::io {

// Minimal hermetic SVG plotting: enough for error-bar summaries and
// prediction-vs-truth curves, no external dependency.

struct ErrorBarEntry {
  std::string label;
  double mean = 0.0;
  double se = 0.0;
};

void write_error_bar_svg(const std::string& path, const std::string& title,
                         const std::string& ylabel,
                         const std::vector<ErrorBarEntry>& entries);

struct XySeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
  bool line = true;  // false: scatter
  std::string color;
};

void write_xy_svg(const std::string& path, const std::string& title,
                  const std::string& xlabel, const std::string& ylabel,
                  const std::vector<XySeries>& series);

}  // namespace multigroup::io
