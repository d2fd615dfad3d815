#include "fuzzcurve/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fuzzcurve/errors.hpp"

namespace fuzzcurve {

// ---------------------------------------------------------------------------
// PiecewiseLinear

PiecewiseLinear::PiecewiseLinear(std::vector<Knot> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2) throw InvalidInput("piecewise-linear side needs at least two knots");
  if (knots_.front().alpha != 0.0 || knots_.back().alpha != 1.0)
    throw InvalidInput("piecewise-linear side must span alpha in [0, 1]");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i].x) || !std::isfinite(knots_[i].alpha))
      throw InvalidInput("piecewise-linear knot is not finite");
    if (i > 0 && !(knots_[i].alpha > knots_[i - 1].alpha))
      throw InvalidInput("piecewise-linear knots must have strictly increasing alpha");
  }
}

std::size_t PiecewiseLinear::segment(double alpha) const {
  // First knot with alpha strictly greater, so an interior knot belongs to the
  // segment on its right.
  auto it = std::upper_bound(knots_.begin(), knots_.end(), alpha,
                             [](double a, const Knot& k) { return a < k.alpha; });
  std::size_t hi = static_cast<std::size_t>(it - knots_.begin());
  hi = std::clamp<std::size_t>(hi, 1, knots_.size() - 1);
  return hi - 1;
}

double PiecewiseLinear::value(double alpha) const {
  const std::size_t s = segment(alpha);
  const Knot& a = knots_[s];
  const Knot& b = knots_[s + 1];
  if (alpha == b.alpha) return b.x;
  const double t = (alpha - a.alpha) / (b.alpha - a.alpha);
  return a.x + t * (b.x - a.x);
}

double PiecewiseLinear::slope(double alpha) const {
  const std::size_t s = segment(alpha);
  const Knot& a = knots_[s];
  const Knot& b = knots_[s + 1];
  return (b.x - a.x) / (b.alpha - a.alpha);
}

std::vector<double> PiecewiseLinear::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < knots_.size(); ++i) out.push_back(knots_[i].alpha);
  return out;
}

// ---------------------------------------------------------------------------
// SideFunction

DualValue SideFunction::eval(double alpha) const {
  if (const auto* e = std::get_if<Expression>(&impl_)) return e->eval_dual(alpha);
  const auto& p = std::get<PiecewiseLinear>(impl_);
  return {p.value(alpha), p.slope(alpha)};
}

double SideFunction::value(double alpha) const {
  if (const auto* p = std::get_if<PiecewiseLinear>(&impl_)) return p->value(alpha);
  return std::get<Expression>(impl_).eval(alpha);
}

double SideFunction::derivative(double alpha) const { return eval(alpha).deriv; }

std::vector<double> SideFunction::breakpoints() const {
  if (const auto* p = std::get_if<PiecewiseLinear>(&impl_)) return p->breakpoints();
  return {};
}

std::string SideFunction::describe() const {
  if (const auto* e = std::get_if<Expression>(&impl_)) return e->to_string();
  std::ostringstream os;
  os.precision(12);
  os << "knots[";
  const auto& knots = std::get<PiecewiseLinear>(impl_).knots();
  for (std::size_t i = 0; i < knots.size(); ++i) os << (i ? " " : "") << '(' << knots[i].alpha << ',' << knots[i].x << ')';
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// ParametricFN

ParametricFN::ParametricFN(SideFunction lower, SideFunction upper, const ValidationOptions& options)
    : lower_(std::move(lower)), upper_(std::move(upper)), middle_(0.0) {
  const double d1 = lower_.value(1.0);
  const double u1 = upper_.value(1.0);
  if (!(std::abs(d1 - u1) <= options.middle_tolerance)) {
    std::ostringstream os;
    os.precision(12);
    os << "sides do not meet at alpha = 1: d(1) = " << d1 << ", u(1) = " << u1;
    throw InvalidInput(os.str());
  }
  middle_ = 0.5 * (d1 + u1);

  const std::size_t n = std::max<std::size_t>(options.samples, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double alpha = static_cast<double>(i) / static_cast<double>(n - 1);
    const DualValue d = lower_.eval(alpha);
    const DualValue u = upper_.eval(alpha);
    auto fail = [&](const char* what) {
      std::ostringstream os;
      os.precision(12);
      os << what << " at alpha = " << alpha << " (d = " << d.value << ", d' = " << d.deriv << ", u = " << u.value
         << ", u' = " << u.deriv << ')';
      throw InvalidInput(os.str());
    };
    if (d.deriv < -options.slope_tolerance) fail("left side d is decreasing");
    if (u.deriv > options.slope_tolerance) fail("right side u is increasing");
    if (d.value > u.value + options.middle_tolerance) fail("alpha-cut is empty (d > u)");
  }
}

ParametricFN ParametricFN::crisp(double x) { return triangle_to_parametric(TriangularFN::make(x, x, x)); }

std::vector<double> ParametricFN::breakpoints() const {
  std::vector<double> out = lower_.breakpoints();
  const std::vector<double> up = upper_.breakpoints();
  out.insert(out.end(), up.begin(), up.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Triangles and polar form

TriangularFN TriangularFN::make(double l, double m, double r) {
  if (!std::isfinite(l) || !std::isfinite(m) || !std::isfinite(r)) throw InvalidInput("triangle has non-finite vertex");
  if (!(l <= m && m <= r)) throw InvalidInput("triangle requires l <= m <= r");
  return {l, m, r};
}

PolarTriple PolarTriple::make(double m, double magnitude, double angle) {
  constexpr double quarter = std::numbers::pi / 4.0;
  if (!std::isfinite(m) || !std::isfinite(magnitude) || !std::isfinite(angle)) throw InvalidInput("polar triple is not finite");
  if (magnitude < 0.0) throw InvalidInput("polar magnitude must be non-negative");
  if (std::abs(angle) > quarter + 1e-12) throw InvalidInput("polar angle must lie in [-pi/4, pi/4]");
  if (magnitude == 0.0 && angle != 0.0) throw InvalidInput("zero magnitude requires zero angle");
  return {m, magnitude, angle};
}

ParametricFN triangle_to_parametric(const TriangularFN& t) {
  PiecewiseLinear d({{0.0, t.l}, {1.0, t.m}});
  PiecewiseLinear u({{0.0, t.r}, {1.0, t.m}});
  return ParametricFN(std::move(d), std::move(u));
}

TangentSample tangent_at(const ParametricFN& fn, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("alpha must lie in [0, 1]");
  return {alpha, fn.lower().derivative(alpha), fn.upper().derivative(alpha)};
}

PolarSample polar_of(const TangentSample& t) {
  const double magnitude = std::hypot(t.d_prime, t.u_prime);
  if (magnitude == 0.0) return {t.alpha, 0.0, 0.0};
  const double ad = std::abs(t.d_prime);
  const double au = std::abs(t.u_prime);
  if (ad == au) return {t.alpha, magnitude, 0.0};
  const double unsigned_angle = std::atan2(std::abs(t.d_prime + t.u_prime), t.d_prime - t.u_prime);
  return {t.alpha, magnitude, ad < au ? unsigned_angle : -unsigned_angle};
}

PolarSample polar_at(const ParametricFN& fn, double alpha) { return polar_of(tangent_at(fn, alpha)); }

PolarTriple triangle_to_polar(const TriangularFN& t) {
  const PolarSample p = polar_of({0.0, t.left_spread(), -t.right_spread()});
  return {t.m, p.magnitude, p.angle};
}

TriangularFN polar_to_triangle(const PolarTriple& p) {
  const double phase = p.angle + std::numbers::pi / 4.0;
  const double left = p.magnitude * std::cos(phase);
  const double right = p.magnitude * std::sin(phase);
  // cos(pi/2) is not exactly 0 in floating point; clamp spreads at the extremes.
  return {p.m - std::max(left, 0.0), p.m, p.m + std::max(right, 0.0)};
}

std::pair<double, double> f_transform(double x, double y) noexcept { return {0.5 * (x + y), 0.5 * (y - x)}; }

}  // namespace fuzzcurve
