#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace specest::cli {

struct PlotSeries {
  std::string label;
  std::vector<std::array<double, 2>> points;  // (x, y), x > 0 for the log axis
  std::string color = "#1f77b4";
  bool dashed = false;
};

/// Self-contained SVG scatter/line chart with a logarithmic x axis and an
/// optional dotted horizontal reference line.
void write_scatter_svg(std::ostream& out, const std::string& title,
                       const std::string& x_label, const std::string& y_label,
                       std::span<const PlotSeries> series,
                       std::optional<double> reference_line,
                       const std::string& reference_label);

}  // namespace specest::cli
