#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace specest::cli {

namespace {

constexpr double kWidth = 660.0;
constexpr double kHeight = 460.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 24.0;
constexpr double kTop = 44.0;
constexpr double kBottom = 58.0;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

void write_scatter_svg(std::ostream& out, const std::string& title,
                       const std::string& x_label, const std::string& y_label,
                       std::span<const PlotSeries> series,
                       std::optional<double> reference_line,
                       const std::string& reference_label) {
  double x_min = 1e300, x_max = -1e300, y_max = 0.0;
  for (const PlotSeries& s : series) {
    for (const auto& p : s.points) {
      if (p[0] > 0.0) {
        x_min = std::min(x_min, p[0]);
        x_max = std::max(x_max, p[0]);
      }
      y_max = std::max(y_max, p[1]);
    }
  }
  if (x_min > x_max) {
    x_min = 0.1;
    x_max = 10.0;
  }
  if (x_min == x_max) {
    x_min /= 2.0;
    x_max *= 2.0;
  }
  if (reference_line) y_max = std::max(y_max, *reference_line);
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.12;

  const double lx_min = std::log10(x_min / 1.25);
  const double lx_max = std::log10(x_max * 1.25);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) {
    return kLeft + plot_w * (std::log10(x) - lx_min) / (lx_max - lx_min);
  };
  auto sy = [&](double y) { return kTop + plot_h * (1.0 - y / y_max); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";

  // Frame.
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";

  // Decade ticks on the x axis.
  for (int d = static_cast<int>(std::ceil(lx_min));
       d <= static_cast<int>(std::floor(lx_max)); ++d) {
    const double x = std::pow(10.0, d);
    out << "<line x1=\"" << sx(x) << "\" y1=\"" << kTop << "\" x2=\"" << sx(x)
        << "\" y2=\"" << kTop + plot_h
        << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << sx(x) << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">1e"
        << d << "</text>\n";
  }
  // Five linear ticks on the y axis.
  for (int t = 0; t <= 5; ++t) {
    const double y = y_max * t / 5.0;
    out << "<line x1=\"" << kLeft << "\" y1=\"" << sy(y) << "\" x2=\""
        << kLeft + plot_w << "\" y2=\"" << sy(y)
        << "\" stroke=\"#eee\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << sy(y) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt(y) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

  if (reference_line) {
    const double y = sy(*reference_line);
    out << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\""
        << kLeft + plot_w << "\" y2=\"" << y
        << "\" stroke=\"#1f77b4\" stroke-width=\"1.2\" "
           "stroke-dasharray=\"2,4\"/>\n";
    if (!reference_label.empty())
      out << "<text x=\"" << kLeft + 6 << "\" y=\"" << y - 5
          << "\" font-family=\"sans-serif\" font-size=\"10\" "
             "fill=\"#1f77b4\">"
          << reference_label << "</text>\n";
  }

  for (const PlotSeries& s : series) {
    std::ostringstream path;
    for (const auto& p : s.points) {
      if (p[0] <= 0.0) continue;
      path << (path.tellp() > 0 ? " " : "") << fmt(sx(p[0])) << ","
           << fmt(sy(std::min(p[1], y_max)));
    }
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.6\"";
    if (s.dashed) out << " stroke-dasharray=\"6,3\"";
    out << " points=\"" << path.str() << "\"/>\n";
    for (const auto& p : s.points) {
      if (p[0] <= 0.0) continue;
      out << "<circle cx=\"" << fmt(sx(p[0])) << "\" cy=\""
          << fmt(sy(std::min(p[1], y_max))) << "\" r=\"3\" fill=\"" << s.color
          << "\"/>\n";
    }
  }

  // Legend, top right.
  double ly = kTop + 14.0;
  for (const PlotSeries& s : series) {
    const double lx = kLeft + plot_w - 150.0;
    out << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\""
        << lx + 26 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"";
    if (s.dashed) out << " stroke-dasharray=\"6,3\"";
    out << "/>\n";
    out << "<text x=\"" << lx + 32 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label
        << "</text>\n";
    ly += 17.0;
  }

  out << "</svg>\n";
}

}  // namespace specest::cli
