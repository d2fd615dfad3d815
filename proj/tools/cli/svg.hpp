#pragma once

// Minimal line charts written as SVG text. Output depends only on the data,
// so repeated runs produce identical files.

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fuzzcurve::cli {

struct Series {
  std::string label;  // empty: not shown in the legend
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f77b4";
  bool dashed = false;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::optional<std::pair<double, double>> x_range;
  std::optional<std::pair<double, double>> y_range;
  std::vector<double> x_markers;  // vertical guide lines
};

std::string render_svg(const Plot& plot);

std::string xml_escape(const std::string& s);

}  // namespace fuzzcurve::cli
