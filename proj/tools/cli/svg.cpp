#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace fuzzcurve::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string tick_label(double x) {
  if (std::abs(x) < 1e-12) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

/// Step of 1, 2 or 5 times a power of ten giving about `target` ticks.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double f : {1.0, 2.0, 5.0, 10.0})
    if (raw <= f * mag) return f * mag;
  return 10.0 * mag;
}

std::pair<double, double> padded(double lo, double hi) {
  if (!(hi > lo)) {
    const double d = std::max(1.0, std::abs(lo)) * 0.5;
    return {lo - d, hi + d};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_svg(const Plot& plot) {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  for (const auto& s : plot.series)
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  if (!std::isfinite(xlo)) xlo = xhi = ylo = yhi = 0.0;
  auto [x0, x1] = plot.x_range ? *plot.x_range : padded(xlo, xhi);
  auto [y0, y1] = plot.y_range ? *plot.y_range : padded(ylo, yhi);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

  std::string o;
  o += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
       "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "  <rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) + "\" fill=\"white\"/>\n";
  o += "  <text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + xml_escape(plot.title) + "</text>\n";

  // Grid and tick labels.
  o += "  <g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  const double xs = nice_step(x1 - x0, 6), ys = nice_step(y1 - y0, 6);
  std::string labels;
  for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9 * xs; t += xs) {
    o += "    <line x1=\"" + num(sx(t)) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(sx(t)) + "\" y2=\"" + num(kTop + ph) + "\"/>\n";
    labels += "  <text x=\"" + num(sx(t)) + "\" y=\"" + num(kTop + ph + 16) + "\" text-anchor=\"middle\">" + tick_label(t) + "</text>\n";
  }
  for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9 * ys; t += ys) {
    o += "    <line x1=\"" + num(kLeft) + "\" y1=\"" + num(sy(t)) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" + num(sy(t)) + "\"/>\n";
    labels += "  <text x=\"" + num(kLeft - 6) + "\" y=\"" + num(sy(t) + 4) + "\" text-anchor=\"end\">" + tick_label(t) + "</text>\n";
  }
  o += "  </g>\n" + labels;
  o += "  <rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  o += "  <text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 12) + "\" text-anchor=\"middle\">" + xml_escape(plot.x_label) + "</text>\n";
  o += "  <text x=\"16\" y=\"" + num(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + num(kTop + ph / 2) + ")\">" +
       xml_escape(plot.y_label) + "</text>\n";

  for (double m : plot.x_markers) {
    if (m < x0 || m > x1) continue;
    o += "  <line x1=\"" + num(sx(m)) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(sx(m)) + "\" y2=\"" + num(kTop + ph) +
         "\" stroke=\"#888888\" stroke-dasharray=\"2 3\"/>\n";
  }

  for (const auto& s : plot.series) {
    std::string pts;
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!pts.empty()) pts += ' ';
      pts += num(sx(x)) + "," + num(sy(y));
    }
    if (pts.empty()) continue;
    o += "  <polyline fill=\"none\" stroke=\"" + xml_escape(s.color) + "\" stroke-width=\"1.6\"" +
         (s.dashed ? std::string(" stroke-dasharray=\"6 4\"") : std::string()) + " points=\"" + pts + "\"/>\n";
  }

  double ly = kTop + 14;
  for (const auto& s : plot.series) {
    if (s.label.empty()) continue;
    const double lx = kLeft + pw - 150;
    o += "  <line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 24) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" +
         xml_escape(s.color) + "\" stroke-width=\"1.6\"" + (s.dashed ? std::string(" stroke-dasharray=\"6 4\"") : std::string()) + "/>\n";
    o += "  <text x=\"" + num(lx + 30) + "\" y=\"" + num(ly) + "\">" + xml_escape(s.label) + "</text>\n";
    ly += 16;
  }
  o += "</svg>\n";
  return o;
}

}  // namespace fuzzcurve::cli
