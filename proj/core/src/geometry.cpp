#include "fuzzcurve/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fuzzcurve/errors.hpp"

namespace fuzzcurve {

namespace {

double grid_point(std::size_t i, std::size_t n) {
  return i == n ? 1.0 : static_cast<double>(i) / static_cast<double>(n);
}

void sort_dedup(std::vector<double>& xs, double eps) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs) {
    if (out.empty() || x - out.back() > eps) out.push_back(x);
  }
  xs = std::move(out);
}

}  // namespace

double curve_length(const ParametricFN& fn, const GeometryOptions& opt) {
  const auto bps = fn.breakpoints();
  return integrate([&](double a) { return polar_at(fn, a).magnitude; }, 0.0, 1.0, bps, opt.quadrature).value[0];
}

double pointwise_skewness(const ParametricFN& fn, double alpha) { return polar_at(fn, alpha).angle; }

std::vector<double> sign_changes(const ParametricFN& fn, std::size_t grid_n, const GeometryOptions& opt) {
  if (grid_n < 2) throw InvalidInput("sign_changes needs grid_n >= 2");
  auto roots = sign_change_roots([&](double a) { return pointwise_skewness(fn, a); }, 0.0, 1.0, grid_n,
                                 opt.sign_change_tol, opt.zero_angle);
  sort_dedup(roots, opt.sign_change_dedup);
  return roots;
}

SkewnessIntegrals skewness_integrals(const ParametricFN& fn, const GeometryOptions& opt) {
  const auto bps = fn.breakpoints();
  const auto res = integrate_n<2>(
      [&](double a) {
        const PolarSample p = polar_at(fn, a);
        return std::array<double, 2>{p.magnitude, p.angle * p.magnitude};
      },
      0.0, 1.0, bps, opt.quadrature);

  SkewnessIntegrals out;
  out.curve_length = res.value[0];
  out.weighted_angle = res.value[1];
  out.error_estimate = res.error_estimate;
  out.degenerate = !(out.curve_length > 0.0);
  if (!out.degenerate) {
    constexpr double quarter = std::numbers::pi / 4.0;
    out.overall_skewness = std::clamp(out.weighted_angle / out.curve_length, -quarter, quarter);
  }
  return out;
}

double overall_skewness(const ParametricFN& fn, const GeometryOptions& opt) {
  return skewness_integrals(fn, opt).overall_skewness;
}

double alpha_mean(const ParametricFN& fn, double target, const GeometryOptions& opt) {
  const std::size_t n = std::max<std::size_t>(opt.grid_n, 2);
  auto h = [&](double a) { return pointwise_skewness(fn, a) - target; };

  double prev_x = 0.0;
  double prev_h = h(0.0);
  double closest = 0.0;
  double closest_h = std::abs(prev_h);
  if (std::abs(prev_h) <= opt.alpha_mean_tol) return 0.0;

  for (std::size_t i = 1; i <= n; ++i) {
    const double x = grid_point(i, n);
    const double hx = h(x);
    if (std::abs(hx) < closest_h) {
      closest_h = std::abs(hx);
      closest = x;
    }
    if (std::abs(hx) <= opt.alpha_mean_tol) return x;
    if ((prev_h < 0.0) != (hx < 0.0)) return bisect(h, prev_x, x, opt.alpha_mean_tol);
    prev_x = x;
    prev_h = hx;
  }
  throw BracketError("gamma never reaches the overall skewness", closest);
}

double alpha_mean(const ParametricFN& fn, const GeometryOptions& opt) {
  return alpha_mean(fn, overall_skewness(fn, opt), opt);
}

SkewnessReport analyze_skewness(const ParametricFN& fn, const GeometryOptions& opt) {
  const SkewnessIntegrals integrals = skewness_integrals(fn, opt);

  SkewnessReport rep;
  rep.curve_length = integrals.curve_length;
  rep.weighted_angle = integrals.weighted_angle;
  rep.overall_skewness = integrals.overall_skewness;
  rep.degenerate = integrals.degenerate;
  rep.sign_changes = sign_changes(fn, std::max<std::size_t>(opt.grid_n, 2), opt);
  rep.alpha_mean = alpha_mean(fn, rep.overall_skewness, opt);
  rep.polar_at_mean = polar_at(fn, rep.alpha_mean);

  double angle = rep.polar_at_mean.angle;
  if (std::abs(angle - rep.overall_skewness) > 1e-9) {
    rep.alpha_mean_at_jump = true;
    angle = rep.polar_at_mean.magnitude > 0.0 ? rep.overall_skewness : 0.0;
  }
  rep.mean_triangle = polar_to_triangle(PolarTriple{fn.middle(), rep.polar_at_mean.magnitude, angle});
  return rep;
}

TriangularFN mean_value_triangle(const ParametricFN& fn, const GeometryOptions& opt) {
  return analyze_skewness(fn, opt).mean_triangle;
}

// ---------------------------------------------------------------------------
// Dispersion

namespace {

struct SideGaps {
  double upper;  // u(alpha) - overline mean(alpha)
  double lower;  // d(alpha) - underline mean(alpha)
};

SideGaps side_gaps(const ParametricFN& fn, const TriangularFN& ref, double alpha) {
  const Interval c = ref.cut(alpha);
  return {fn.upper().value(alpha) - c.upper, fn.lower().value(alpha) - c.lower};
}

}  // namespace

double level_dispersion(const ParametricFN& fn, const TriangularFN& reference, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("alpha must lie in [0, 1]");
  const SideGaps g = side_gaps(fn, reference, alpha);
  return std::max(std::abs(g.upper), std::abs(g.lower));
}

double level_dispersion(const ParametricFN& fn, double alpha, const GeometryOptions& opt) {
  return level_dispersion(fn, mean_value_triangle(fn, opt), alpha);
}

std::vector<double> dispersion_kinks(const ParametricFN& fn, const TriangularFN& reference, const GeometryOptions& opt) {
  const std::size_t n = std::max<std::size_t>(opt.grid_n, 2);
  // Differences below this are rounding noise (e.g. a side that coincides
  // with the reference), not a crossing.
  const double noise = 1e-12 * std::max(1.0, std::abs(fn.middle()));

  std::vector<double> kinks = fn.breakpoints();
  auto add = [&](const std::function<double(double)>& g) {
    auto r = sign_change_roots(g, 0.0, 1.0, n, 1e-13, noise);
    kinks.insert(kinks.end(), r.begin(), r.end());
  };
  add([&](double a) { return side_gaps(fn, reference, a).upper; });
  add([&](double a) { return side_gaps(fn, reference, a).lower; });
  add([&](double a) {
    const SideGaps g = side_gaps(fn, reference, a);
    return std::abs(g.upper) - std::abs(g.lower);
  });
  kinks.erase(std::remove_if(kinks.begin(), kinks.end(), [](double a) { return !(a > 0.0 && a < 1.0); }), kinks.end());
  sort_dedup(kinks, 1e-13);
  return kinks;
}

double overall_dispersion(const ParametricFN& fn, const TriangularFN& reference, const GeometryOptions& opt) {
  const auto kinks = dispersion_kinks(fn, reference, opt);
  return integrate([&](double a) { return level_dispersion(fn, reference, a); }, 0.0, 1.0, kinks,
                   opt.dispersion_quadrature)
      .value[0];
}

double overall_dispersion(const ParametricFN& fn, const GeometryOptions& opt) {
  return overall_dispersion(fn, mean_value_triangle(fn, opt), opt);
}

DispersionReport dispersion_report(const ParametricFN& fn, const TriangularFN& reference, const GeometryOptions& opt) {
  DispersionReport rep;
  rep.reference = reference;
  rep.kinks = dispersion_kinks(fn, reference, opt);
  rep.level_dispersion = [fn, reference](double a) { return level_dispersion(fn, reference, a); };
  rep.overall_dispersion =
      integrate(rep.level_dispersion, 0.0, 1.0, rep.kinks, opt.dispersion_quadrature).value[0];
  return rep;
}

}  // namespace fuzzcurve
