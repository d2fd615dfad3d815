#pragma once

// Curve length, angular skewness, mean value triangle and Hausdorff
// dispersion of a fuzzy number viewed as the curve alpha -> (d, u).

#include <functional>
#include <vector>

#include "fuzzcurve/fuzzy.hpp"
#include "fuzzcurve/numerics.hpp"

namespace fuzzcurve {

struct GeometryOptions {
  QuadratureOptions quadrature{.abs_tol = 1e-9, .rel_tol = 1e-13};  // lengths and skewness integrals
  QuadratureOptions dispersion_quadrature{.abs_tol = 1e-8};
  std::size_t grid_n = 1024;
  double sign_change_tol = 1e-10;
  double sign_change_dedup = 1e-8;
  double alpha_mean_tol = 1e-12;
  /// |gamma| at or below this counts as zero when looking for sign changes.
  double zero_angle = 1e-14;
};

/// C(sigma) and the arc-length weighted angle integral, from one quadrature pass.
struct SkewnessIntegrals {
  double curve_length = 0.0;     // integral of r(alpha)
  double weighted_angle = 0.0;   // integral of gamma(alpha) * r(alpha)
  double overall_skewness = 0.0; // weighted_angle / curve_length, 0 if degenerate
  double error_estimate = 0.0;
  bool degenerate = false;       // crisp number: C(sigma) = 0
};

struct SkewnessReport {
  double curve_length = 0.0;
  double weighted_angle = 0.0;
  double overall_skewness = 0.0;
  std::vector<double> sign_changes;
  double alpha_mean = 0.0;
  PolarSample polar_at_mean{};
  TriangularFN mean_triangle{};
  bool degenerate = false;
  /// gamma jumps across the overall skewness at alpha_mean (piecewise-linear
  /// sides) instead of attaining it; the mean triangle then takes the overall
  /// skewness as its angle.
  bool alpha_mean_at_jump = false;
};

struct DispersionReport {
  TriangularFN reference{};
  std::function<double(double)> level_dispersion;
  double overall_dispersion = 0.0;
  std::vector<double> kinks;
};

double curve_length(const ParametricFN& fn, const GeometryOptions& opt = {});

/// gamma(alpha); identical to polar_at(fn, alpha).angle.
double pointwise_skewness(const ParametricFN& fn, double alpha);

/// Ascending alphas where gamma changes sign. An identically zero gamma has none.
std::vector<double> sign_changes(const ParametricFN& fn, std::size_t grid_n, const GeometryOptions& opt = {});

SkewnessIntegrals skewness_integrals(const ParametricFN& fn, const GeometryOptions& opt = {});

/// Arc-length weighted mean of gamma. A crisp number has skewness 0.
double overall_skewness(const ParametricFN& fn, const GeometryOptions& opt = {});

/// Smallest alpha with gamma(alpha) = target.
///
/// Throws BracketError (carrying the closest grid point) when gamma neither
/// attains nor crosses the target.
double alpha_mean(const ParametricFN& fn, double target, const GeometryOptions& opt = {});
double alpha_mean(const ParametricFN& fn, const GeometryOptions& opt = {});

TriangularFN mean_value_triangle(const ParametricFN& fn, const GeometryOptions& opt = {});

/// Full skewness pipeline: integrals, sign changes, alpha_mean, mean triangle.
SkewnessReport analyze_skewness(const ParametricFN& fn, const GeometryOptions& opt = {});

/// Hausdorff distance between the alpha-cuts of fn and of `reference`.
double level_dispersion(const ParametricFN& fn, const TriangularFN& reference, double alpha);
/// Same against fn's own mean value triangle.
double level_dispersion(const ParametricFN& fn, double alpha, const GeometryOptions& opt = {});

/// Alphas where the level dispersion has a kink: either side difference
/// crosses zero or the maximum switches sides.
std::vector<double> dispersion_kinks(const ParametricFN& fn, const TriangularFN& reference, const GeometryOptions& opt = {});

double overall_dispersion(const ParametricFN& fn, const TriangularFN& reference, const GeometryOptions& opt = {});
double overall_dispersion(const ParametricFN& fn, const GeometryOptions& opt = {});

DispersionReport dispersion_report(const ParametricFN& fn, const TriangularFN& reference, const GeometryOptions& opt = {});

}  // namespace fuzzcurve
