#pragma once

// Representations of a fuzzy number xi with middle m:
//
//   parametric   [d(alpha), u(alpha)],     alpha in [0, 1]
//   curve        sigma(alpha) = (d(alpha), u(alpha))
//   tangent      sigma'(alpha) = (d'(alpha), u'(alpha)), anchored at (m, m)
//   polar        (m, r(alpha), gamma(alpha))
//
// d is nondecreasing and u nonincreasing, so d' >= 0 and u' <= 0. The angle
// gamma is measured from the anti-diagonal direction (1, -1): it is 0 for a
// symmetric tangent (u' = -d'), positive when the right side moves faster
// (|d'| < |u'|) and negative otherwise. It always lies in [-pi/4, pi/4].

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fuzzcurve/expr.hpp"

namespace fuzzcurve {

struct Knot {
  double alpha;
  double x;
};

/// Continuous piecewise-linear function on [0, 1].
///
/// Knots are sorted by alpha, start at 0 and end at 1. Repeated alphas are
/// not allowed (a side function is single valued).
class PiecewiseLinear {
 public:
  explicit PiecewiseLinear(std::vector<Knot> knots);

  const std::vector<Knot>& knots() const noexcept { return knots_; }

  double value(double alpha) const;
  /// Segment slope; right-hand at an interior knot, left-hand at alpha = 1.
  double slope(double alpha) const;
  /// Interior knot alphas (excluding 0 and 1).
  std::vector<double> breakpoints() const;

 private:
  std::size_t segment(double alpha) const;

  std::vector<Knot> knots_;
};

/// One side of a fuzzy number, d or u, as an analytic expression or a knot list.
class SideFunction {
 public:
  SideFunction(Expression e) : impl_(std::move(e)) {}  // NOLINT: implicit by intent
  SideFunction(PiecewiseLinear p) : impl_(std::move(p)) {}  // NOLINT

  double value(double alpha) const;
  double derivative(double alpha) const;
  DualValue eval(double alpha) const;

  std::vector<double> breakpoints() const;
  bool is_expression() const noexcept { return std::holds_alternative<Expression>(impl_); }
  const Expression* expression() const noexcept { return std::get_if<Expression>(&impl_); }
  const PiecewiseLinear* piecewise() const noexcept { return std::get_if<PiecewiseLinear>(&impl_); }

  /// Expression text or a knot list, for messages and manifests.
  std::string describe() const;

 private:
  std::variant<Expression, PiecewiseLinear> impl_;
};

struct Interval {
  double lower;
  double upper;

  double width() const noexcept { return upper - lower; }
  double midpoint() const noexcept { return 0.5 * (lower + upper); }
  bool contains(double x) const noexcept { return lower <= x && x <= upper; }
};

struct ValidationOptions {
  std::size_t samples = 1025;
  double middle_tolerance = 1e-9;
  double slope_tolerance = 1e-9;
};

/// Fuzzy number in parametric representation.
class ParametricFN {
 public:
  /// Validates on construction: d(1) = u(1) (within tolerance), d' >= 0,
  /// u' <= 0 and d <= u on a uniform sample grid. Throws InvalidInput.
  ParametricFN(SideFunction lower, SideFunction upper, const ValidationOptions& options = {});

  static ParametricFN crisp(double x);

  const SideFunction& lower() const noexcept { return lower_; }
  const SideFunction& upper() const noexcept { return upper_; }
  double middle() const noexcept { return middle_; }

  Interval cut(double alpha) const { return {lower_.value(alpha), upper_.value(alpha)}; }
  /// Support endpoints l = d(0), r = u(0).
  Interval support() const { return cut(0.0); }

  /// Union of both sides' knots, sorted, deduplicated.
  std::vector<double> breakpoints() const;

 private:
  SideFunction lower_;
  SideFunction upper_;
  double middle_;
};

struct TangentSample {
  double alpha;
  double d_prime;
  double u_prime;
};

struct PolarSample {
  double alpha;
  double magnitude;  // r(alpha)
  double angle;      // gamma(alpha)
};

/// Linear fuzzy number tr*(l, m, r).
struct TriangularFN {
  double l;
  double m;
  double r;

  /// Throws InvalidInput unless l <= m <= r and all finite.
  static TriangularFN make(double l, double m, double r);

  double left_spread() const noexcept { return m - l; }
  double right_spread() const noexcept { return r - m; }
  Interval cut(double alpha) const noexcept { return {l + alpha * (m - l), r - alpha * (r - m)}; }
};

/// Polar form (m, r, gamma) of a linear fuzzy number.
struct PolarTriple {
  double m;
  double magnitude;
  double angle;

  static PolarTriple make(double m, double magnitude, double angle);
};

ParametricFN triangle_to_parametric(const TriangularFN& t);

TangentSample tangent_at(const ParametricFN& fn, double alpha);

/// Magnitude and signed angle of a tangent (d', u').
///
/// Computed as atan2(|d' + u'|, d' - u'), which equals
/// arccos((d' - u') / (sqrt(2) r)) but keeps full precision near gamma = 0,
/// then signed by comparing |d'| and |u'|. A zero tangent has angle 0.
PolarSample polar_of(const TangentSample& t);

PolarSample polar_at(const ParametricFN& fn, double alpha);

PolarTriple triangle_to_polar(const TriangularFN& t);
TriangularFN polar_to_triangle(const PolarTriple& p);

/// (x, y) -> ((x + y) / 2, (y - x) / 2): the diagonal becomes the abscissa.
std::pair<double, double> f_transform(double x, double y) noexcept;

}  // namespace fuzzcurve
