#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fuzzcurve/errors.hpp"
#include "fuzzcurve/geometry.hpp"
#include "oracles.hpp"

using namespace fuzzcurve;
namespace t = fuzzcurve::testing;
constexpr double pi = std::numbers::pi;
constexpr double quarter = pi / 4.0;

namespace {

const ParametricFN& example() {
  static const ParametricFN fn = t::example_fn();
  return fn;
}

ParametricFN tri(double l, double m, double r) { return triangle_to_parametric(TriangularFN::make(l, m, r)); }

ParametricFN affine(const t::RandomSides& s, double c, double shift) {
  const std::string C = t::lit(c);
  const std::string D = t::lit(shift);
  return t::analytic_fn(C + "*(" + s.lower + ") + " + D, C + "*(" + s.upper + ") + " + D);
}

ParametricFN reflected(const t::RandomSides& s, double centre) {
  const std::string two_s = t::lit(2.0 * centre);
  return t::analytic_fn(two_s + " - (" + s.upper + ")", two_s + " - (" + s.lower + ")");
}

ParametricFN symmetric(const t::RandomSides& s) {
  return t::analytic_fn(s.lower, t::lit(2.0 * s.middle) + " - (" + s.lower + ")");
}

}  // namespace

TEST_CASE("worked example: skewness pipeline") {
  const SkewnessReport rep = analyze_skewness(example());
  CHECK(std::abs(rep.curve_length - 3.503009852) < 1e-6);
  CHECK(std::abs(rep.weighted_angle - 1.760449519) < 1e-6);
  CHECK(std::abs(rep.overall_skewness - 0.5025534021) < 1e-6);
  CHECK(std::abs(rep.overall_skewness / pi - 0.1599677162) < 1e-6);
  REQUIRE(rep.sign_changes.size() == 1);
  CHECK(std::abs(rep.sign_changes[0] - 0.4299872156) < 1e-8);
  CHECK(std::abs(rep.alpha_mean - 0.6347392094) < 1e-8);
  CHECK(std::abs(rep.polar_at_mean.magnitude - 3.346605882) < 1e-6);
  CHECK(std::abs(rep.mean_triangle.left_spread() - 0.9339992140) < 1e-6);
  CHECK(std::abs(rep.mean_triangle.right_spread() - 3.213629785) < 1e-6);
  CHECK(rep.mean_triangle.m == doctest::Approx(pi).epsilon(1e-15));
  CHECK_FALSE(rep.degenerate);
  CHECK_FALSE(rep.alpha_mean_at_jump);

  CHECK(std::abs(pointwise_skewness(example(), 0.4299872156)) < 1e-6);
  CHECK(std::abs(triangle_to_polar(rep.mean_triangle).angle - rep.overall_skewness) < 1e-8);
}

TEST_CASE("worked example: quadrature agrees with a dense trapezoid") {
  const auto r = [](double a) { return polar_at(example(), a).magnitude; };
  const auto gr = [](double a) {
    const PolarSample p = polar_at(example(), a);
    return p.angle * p.magnitude;
  };
  const SkewnessIntegrals s = skewness_integrals(example());
  CHECK(std::abs(s.curve_length - t::trapezoid(r, 0.0, 1.0, 1'000'000)) < 1e-6);
  CHECK(std::abs(s.weighted_angle - t::trapezoid(gr, 0.0, 1.0, 1'000'000)) < 1e-6);
}

TEST_CASE("worked example: dispersion") {
  const SkewnessReport rep = analyze_skewness(example());
  // Against the mean triangle computed above. Reference values from a
  // 30-digit independent evaluation of the same definition.
  CHECK(std::abs(level_dispersion(example(), rep.mean_triangle, 0.0) - 0.0963923005934) < 1e-8);
  CHECK(std::abs(overall_dispersion(example(), rep.mean_triangle) - 0.910506800679) < 1e-7);
  CHECK(level_dispersion(example(), rep.mean_triangle, 1.0) < 1e-12);

  // The published dispersion figures correspond to the reference triangle
  // (pi - 0.6308965082, pi, pi + 1.877866053); the integration itself
  // reproduces them with that reference.
  const TriangularFN printed{pi - 0.6308965082, pi, pi + 1.877866053};
  CHECK(std::abs(level_dispersion(example(), printed, 0.0) - 1.263726601) < 1e-8);
  CHECK(std::abs(overall_dispersion(example(), printed) - 1.574341097) < 1e-5);

  const DispersionReport d = dispersion_report(example(), rep.mean_triangle);
  CHECK(std::abs(d.overall_dispersion - 0.910506800679) < 1e-7);
  CHECK(d.level_dispersion(0.0) == level_dispersion(example(), rep.mean_triangle, 0.0));
  for (double k : d.kinks) {
    CHECK(k > 0.0);
    CHECK(k < 1.0);
  }
}

TEST_CASE("triangles") {
  const ParametricFN a = tri(2, 4, 5);
  CHECK(curve_length(a) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK(std::abs(overall_skewness(a) - (-0.321751)) < 1e-6);
  CHECK(std::abs(pointwise_skewness(a, 0.5) - (std::acos(3.0 / std::sqrt(10.0)) * -1.0)) < 1e-15);
  CHECK(sign_changes(a, 1024).empty());
  CHECK(alpha_mean(a) == 0.0);
  const TriangularFN mean = mean_value_triangle(a);
  CHECK(mean.l == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(mean.m == 4.0);
  CHECK(mean.r == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(overall_dispersion(a) < 1e-12);
  for (double alpha : {0.0, 0.3, 1.0}) CHECK(level_dispersion(a, alpha) < 1e-12);

  const SkewnessReport crisp = analyze_skewness(tri(4, 4, 4));
  CHECK(crisp.curve_length == 0.0);
  CHECK(crisp.overall_skewness == 0.0);
  CHECK(crisp.degenerate);
  CHECK(crisp.mean_triangle.l == 4.0);
  CHECK(crisp.mean_triangle.r == 4.0);
}

TEST_CASE("symmetric numbers") {
  const ParametricFN s = t::analytic_fn("1 + 2*alpha^2 - 2", "1 - 2*alpha^2 + 2");
  CHECK(std::abs(overall_skewness(s)) < 1e-12);
  CHECK(sign_changes(s, 1024).empty());
  CHECK(alpha_mean(s) == 0.0);
  // r(0) = 0 here, so the mean triangle collapses to the middle.
  const TriangularFN mt = mean_value_triangle(s);
  CHECK(mt.l == 1.0);
  CHECK(mt.r == 1.0);

  const ParametricFN w = t::analytic_fn("sin(pi*alpha/2)", "2 - sin(pi*alpha/2)");
  const double rho = polar_at(w, 0.0).magnitude;
  const TriangularFN wm = mean_value_triangle(w);
  CHECK(wm.l == doctest::Approx(1.0 - rho / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(wm.r == doctest::Approx(1.0 + rho / std::sqrt(2.0)).epsilon(1e-14));

  // Dispersion has a kink where the reference crosses the sides; compare with
  // a dense Riemann sum.
  const double riemann = [&] {
    const std::size_t n = 1'000'000;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += level_dispersion(w, wm, (i + 0.5) / n);
    return acc / n;
  }();
  CHECK(std::abs(overall_dispersion(w, wm) - riemann) < 1e-6);
}

TEST_CASE("alpha_mean finds the smallest crossing") {
  // The first crossing is returned.
  const ParametricFN fn = t::analytic_fn("alpha + 0.3*alpha^2 - 1.3", "1.3 - alpha - 0.3*alpha^3");
  const SkewnessReport rep = analyze_skewness(fn);
  for (double a = 0.0; a < rep.alpha_mean - 1e-6; a += 1e-3) {
    CHECK((pointwise_skewness(fn, a) - rep.overall_skewness) * (pointwise_skewness(fn, 0.0) - rep.overall_skewness) > 0.0);
  }
  CHECK(std::abs(pointwise_skewness(fn, rep.alpha_mean) - rep.overall_skewness) < 1e-9);

  CHECK_THROWS_AS(alpha_mean(tri(2, 4, 5), 0.5), BracketError);
  try {
    alpha_mean(fn, 2.0);
  } catch (const BracketError& e) {
    CHECK(e.closest_point() >= 0.0);
    CHECK(e.closest_point() <= 1.0);
  }
}

TEST_CASE("piecewise-linear sides: alpha_mean may sit on a jump of gamma") {
  const ParametricFN fn(PiecewiseLinear({{0, 0}, {0.5, 1}, {1, 2}}), PiecewiseLinear({{0, 6}, {0.5, 5}, {1, 2}}));
  const SkewnessReport rep = analyze_skewness(fn);
  CHECK(rep.alpha_mean_at_jump);
  CHECK(std::abs(rep.alpha_mean - 0.5) < 1e-9);
  CHECK(std::abs(triangle_to_polar(rep.mean_triangle).angle - rep.overall_skewness) < 1e-8);
  // Exact per-segment integrals: 0.5*|(2, -2)| + 0.5*|(2, -6)|.
  CHECK(rep.curve_length == doctest::Approx(0.5 * std::sqrt(8.0) + 0.5 * std::sqrt(40.0)).epsilon(1e-13));
}

TEST_CASE("property P.1: affine maps leave skewness unchanged") {
  t::RandomFnGenerator gen(101);
  for (int i = 0; i < 150; ++i) {
    const t::RandomSides s = gen.next();
    const double c = gen.uniform(0.1, 10.0);
    const double shift = gen.uniform(-20.0, 20.0);
    const ParametricFN x = t::analytic_fn(s.lower, s.upper);
    const ParametricFN y = affine(s, c, shift);
    for (int k = 0; k <= 16; ++k) CHECK(std::abs(pointwise_skewness(x, k / 16.0) - pointwise_skewness(y, k / 16.0)) <= 1e-10);
    CHECK(std::abs(overall_skewness(x) - overall_skewness(y)) <= 1e-10);
  }
}

TEST_CASE("property P.2: symmetric numbers have zero overall skewness") {
  t::RandomFnGenerator gen(103);
  for (int i = 0; i < 150; ++i) CHECK(std::abs(overall_skewness(symmetric(gen.next()))) <= 1e-10);
}

TEST_CASE("property P.3: reflection negates skewness") {
  t::RandomFnGenerator gen(107);
  for (int i = 0; i < 150; ++i) {
    const t::RandomSides s = gen.next();
    const double centre = gen.uniform(-5.0, 5.0);
    const ParametricFN x = t::analytic_fn(s.lower, s.upper);
    const ParametricFN y = reflected(s, centre);
    for (int k = 0; k <= 16; ++k) CHECK(std::abs(pointwise_skewness(x, k / 16.0) + pointwise_skewness(y, k / 16.0)) <= 1e-10);
    CHECK(std::abs(overall_skewness(x) + overall_skewness(y)) <= 1e-10);
  }
}

TEST_CASE("property: consistency of the mean triangle and bounds") {
  t::RandomFnGenerator gen(113);
  for (int i = 0; i < 100; ++i) {
    const t::RandomSides s = gen.next();
    const ParametricFN x = t::analytic_fn(s.lower, s.upper);
    const SkewnessReport rep = analyze_skewness(x);
    CHECK(std::abs(rep.overall_skewness) <= quarter);
    CHECK(rep.alpha_mean >= 0.0);
    CHECK(rep.alpha_mean <= 1.0);
    if (rep.polar_at_mean.magnitude > 1e-6) {
      CHECK(std::abs(triangle_to_polar(rep.mean_triangle).angle - rep.overall_skewness) <= 1e-8);
    } else {
      // Tangent vanishes at alpha = 0, gamma jumps there and the mean
      // triangle is too thin to recover its angle from l, m, r.
      CHECK(rep.alpha_mean_at_jump);
    }
    const double disp = overall_dispersion(x, rep.mean_triangle);
    CHECK(disp >= 0.0);
    CHECK(level_dispersion(x, rep.mean_triangle, 1.0) <= 1e-12);
  }
}
