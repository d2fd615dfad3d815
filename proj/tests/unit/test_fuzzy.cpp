#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fuzzcurve/errors.hpp"
#include "fuzzcurve/fuzzy.hpp"
#include "oracles.hpp"

using namespace fuzzcurve;
namespace t = fuzzcurve::testing;
constexpr double pi = std::numbers::pi;
constexpr double quarter = pi / 4.0;
// arccos(2 / sqrt(5)) - pi/4: the tilt of tr*(2,4,5).
const double kTilt = std::acos(2.0 / std::sqrt(5.0)) - quarter;

TEST_CASE("triangle_to_parametric gives exact linear sides") {
  const ParametricFN a = triangle_to_parametric(TriangularFN::make(2, 4, 5));
  for (double alpha : {0.0, 0.25, 0.5, 1.0}) {
    CHECK(a.cut(alpha).lower == 2 + 2 * alpha);
    CHECK(a.cut(alpha).upper == 5 - alpha);
  }
  const ParametricFN c = triangle_to_parametric(TriangularFN::make(4, 4, 4));
  CHECK(c.cut(0.3).lower == 4.0);
  CHECK(c.cut(0.3).upper == 4.0);
  const ParametricFN s = triangle_to_parametric(TriangularFN::make(2.5, 4, 5.5));
  CHECK(s.cut(0.5).lower == 2.5 + 1.5 * 0.5);
  CHECK(s.cut(0.5).upper == 5.5 - 1.5 * 0.5);
  CHECK(s.middle() == 4.0);
  CHECK(s.support().lower == 2.5);
  CHECK(s.support().upper == 5.5);
}

TEST_CASE("tangent_at") {
  const ParametricFN a = triangle_to_parametric(TriangularFN::make(2, 4, 5));
  for (double alpha : {0.0, 0.5, 1.0}) {
    const TangentSample ts = tangent_at(a, alpha);
    CHECK(ts.d_prime == 2.0);
    CHECK(ts.u_prime == -1.0);
  }
  const ParametricFN ex = t::example_fn();
  for (double alpha : {0.1, 0.5, 0.9}) {
    CHECK(tangent_at(ex, alpha).u_prime == doctest::Approx(-4 * pi * alpha * alpha * alpha).epsilon(1e-14));
  }
  const TangentSample sym = tangent_at(triangle_to_parametric(TriangularFN::make(2.5, 4, 5.5)), 0.3);
  CHECK(sym.d_prime == 1.5);
  CHECK(sym.u_prime == -1.5);
  CHECK_THROWS_AS(tangent_at(a, 1.5), InvalidInput);
  CHECK_THROWS_AS(tangent_at(a, -0.1), InvalidInput);
}

TEST_CASE("piecewise sides use right-hand slopes, left-hand at alpha = 1") {
  const ParametricFN fn(PiecewiseLinear({{0, 0}, {0.5, 1}, {1, 1.5}}), PiecewiseLinear({{0, 4}, {0.25, 3}, {1, 1.5}}));
  CHECK(tangent_at(fn, 0.5).d_prime == doctest::Approx(1.0));
  CHECK(tangent_at(fn, 0.49).d_prime == doctest::Approx(2.0));
  CHECK(tangent_at(fn, 0.25).u_prime == doctest::Approx(-2.0));
  CHECK(tangent_at(fn, 1.0).d_prime == doctest::Approx(1.0));
  CHECK(tangent_at(fn, 1.0).u_prime == doctest::Approx(-2.0));
  const auto bps = fn.breakpoints();
  REQUIRE(bps.size() == 2);
  CHECK(bps[0] == 0.25);
  CHECK(bps[1] == 0.5);
}

TEST_CASE("polar_at on triangles") {
  const PolarSample a = polar_at(triangle_to_parametric(TriangularFN::make(2, 4, 5)), 0.5);
  CHECK(a.magnitude == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  CHECK(std::abs(a.angle - (-0.321751)) < 1e-6);
  CHECK(std::abs(a.angle * 180.0 / pi - (-18.435)) < 1e-3);
  CHECK(std::abs(a.angle - kTilt) < 1e-15);

  CHECK(polar_at(triangle_to_parametric(TriangularFN::make(2.5, 4, 5.5)), 0.2).angle == 0.0);
  CHECK(std::abs(polar_at(triangle_to_parametric(TriangularFN::make(3, 4, 6)), 0.7).angle - 0.321751) < 1e-6);
}

TEST_CASE("polar_of agrees with the literal arccos formula") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0.0, 5.0);
  for (int i = 0; i < 2000; ++i) {
    const double dp = d(rng);
    const double up = -d(rng);
    const PolarSample p = polar_of({0.5, dp, up});
    CHECK(p.magnitude == doctest::Approx(std::sqrt(dp * dp + up * up)).epsilon(1e-15));
    // arccos loses about sqrt(eps) near gamma = 0; the atan2 form does not.
    CHECK(std::abs(p.angle - t::arccos_angle(dp, up)) < 1e-7);
  }
  CHECK(polar_of({0.0, 0.0, 0.0}).angle == 0.0);
  CHECK(polar_of({0.0, 0.0, 0.0}).magnitude == 0.0);
  CHECK(polar_of({0.0, 1.0, 0.0}).angle == doctest::Approx(-quarter).epsilon(1e-15));
  CHECK(polar_of({0.0, 0.0, -1.0}).angle == doctest::Approx(quarter).epsilon(1e-15));
}

TEST_CASE("triangle_to_polar") {
  const PolarTriple p = triangle_to_polar(TriangularFN::make(2, 4, 5));
  CHECK(p.m == 4.0);
  CHECK(p.magnitude == doctest::Approx(std::sqrt(5.0)));
  CHECK(std::abs(p.angle - kTilt) < 1e-15);

  CHECK(std::abs(triangle_to_polar(TriangularFN::make(1, 4, 4)).angle + quarter) < 1e-10);
  CHECK(std::abs(triangle_to_polar(TriangularFN::make(4, 4, 9)).angle - quarter) < 1e-10);

  const PolarTriple c = triangle_to_polar(TriangularFN::make(4, 4, 4));
  CHECK(c.m == 4.0);
  CHECK(c.magnitude == 0.0);
  CHECK(c.angle == 0.0);
}

TEST_CASE("polar_to_triangle") {
  const TriangularFN mean = polar_to_triangle({pi, 3.346605882, 0.5025534021});
  CHECK(std::abs((mean.m - mean.l) - 0.9339992140) < 1e-6);
  CHECK(std::abs((mean.r - mean.m) - 3.213629785) < 1e-6);

  const double delta = 0.75;
  const TriangularFN sym = polar_to_triangle({4, std::sqrt(2.0) * delta, 0.0});
  CHECK(sym.l == doctest::Approx(4 - delta).epsilon(1e-15));
  CHECK(sym.r == doctest::Approx(4 + delta).epsilon(1e-15));

  const TriangularFN edge = polar_to_triangle({4, 3, quarter});
  CHECK(edge.l == 4.0);
  CHECK(edge.m == 4.0);
  CHECK(edge.r == doctest::Approx(7.0).epsilon(1e-15));
}

TEST_CASE("f_transform") {
  CHECK(f_transform(1, 1) == std::pair<double, double>{1, 0});
  CHECK(f_transform(-1, 1) == std::pair<double, double>{0, 1});
  // Direct matrix-vector product with F = 1/2 [[1, 1], [-1, 1]].
  const double F[2][2] = {{0.5, 0.5}, {-0.5, 0.5}};
  const auto [a, b] = f_transform(3, 4.5);
  CHECK(a == F[0][0] * 3 + F[0][1] * 4.5);
  CHECK(b == F[1][0] * 3 + F[1][1] * 4.5);
  CHECK(a == 3.75);
  CHECK(b == 0.75);
}

TEST_CASE("property: polar <-> triangle round trip") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> mid(-100.0, 100.0);
  std::uniform_real_distribution<double> spread(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double m = mid(rng);
    double a = spread(rng);
    double b = spread(rng);
    if (i % 10 == 0) a = 0.0;
    if (i % 10 == 1) b = 0.0;
    if (i % 10 == 2) b = a;
    const TriangularFN tri = TriangularFN::make(m - a, m, m + b);
    const TriangularFN back = polar_to_triangle(triangle_to_polar(tri));
    CHECK(std::abs(back.l - tri.l) <= 1e-10);
    CHECK(back.m == tri.m);
    CHECK(std::abs(back.r - tri.r) <= 1e-10);
  }
}

TEST_CASE("property: f_transform preserves angles between vectors") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> c(-10.0, 10.0);
  auto cos_angle = [](double x1, double y1, double x2, double y2) {
    return (x1 * x2 + y1 * y2) / (std::hypot(x1, y1) * std::hypot(x2, y2));
  };
  for (int i = 0; i < 1000; ++i) {
    const double x1 = c(rng), y1 = c(rng), x2 = c(rng), y2 = c(rng);
    const auto [a1, b1] = f_transform(x1, y1);
    const auto [a2, b2] = f_transform(x2, y2);
    CHECK(std::abs(cos_angle(x1, y1, x2, y2) - cos_angle(a1, b1, a2, b2)) <= 1e-12);
    CHECK(std::hypot(a1, b1) == doctest::Approx(std::hypot(x1, y1) / std::sqrt(2.0)).epsilon(1e-14));
  }
}

TEST_CASE("property: a triangle has a constant polar profile") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double m = u(rng);
    const TriangularFN tri = TriangularFN::make(m - u(rng), m, m + u(rng));
    const PolarTriple p = triangle_to_polar(tri);
    const ParametricFN fn = triangle_to_parametric(tri);
    for (int k = 0; k <= 10; ++k) {
      const PolarSample s = polar_at(fn, k / 10.0);
      CHECK(std::abs(s.magnitude - p.magnitude) <= 1e-12 * std::max(1.0, p.magnitude));
      CHECK(std::abs(s.angle - p.angle) <= 1e-12);
    }
  }
}

TEST_CASE("property: symmetric numbers have zero angle everywhere") {
  t::RandomFnGenerator gen(29);
  for (int i = 0; i < 100; ++i) {
    const t::RandomSides s = gen.next();
    const std::string mirrored = "2*" + t::lit(s.middle) + " - (" + s.lower + ")";
    const ParametricFN fn = t::analytic_fn(s.lower, mirrored);
    for (int k = 0; k <= 64; ++k) CHECK(std::abs(polar_at(fn, k / 64.0).angle) <= 1e-12);
  }
}

TEST_CASE("property: |gamma| <= pi/4") {
  t::RandomFnGenerator gen(31);
  for (int i = 0; i < 200; ++i) {
    const t::RandomSides s = gen.next();
    const ParametricFN fn = t::analytic_fn(s.lower, s.upper);
    for (int k = 0; k <= 32; ++k) CHECK(std::abs(polar_at(fn, k / 32.0).angle) <= quarter + 1e-12);
  }
}

TEST_CASE("ParametricFN validation") {
  SUBCASE("sides must meet at alpha = 1") {
    CHECK_THROWS_AS(t::analytic_fn("alpha", "3 - alpha"), InvalidInput);
  }
  SUBCASE("left side must not decrease") {
    CHECK_THROWS_AS(t::analytic_fn("2 - alpha", "2 - alpha"), InvalidInput);
  }
  SUBCASE("right side must not increase") {
    CHECK_THROWS_AS(t::analytic_fn("alpha", "alpha"), InvalidInput);
  }
  SUBCASE("non-monotone interior is caught by sampling") {
    CHECK_THROWS_AS(t::analytic_fn("alpha + 0.2*sin(20*alpha) - 0.2*sin(20)", "5 - 4*alpha"), InvalidInput);
  }
  SUBCASE("domain errors propagate") {
    CHECK_THROWS_AS(t::analytic_fn("ln(alpha)", "0"), DomainError);
  }
  SUBCASE("a crisp number is valid") {
    const ParametricFN c = ParametricFN::crisp(4.0);
    CHECK(c.middle() == 4.0);
    CHECK(polar_at(c, 0.5).magnitude == 0.0);
    CHECK(polar_at(c, 0.5).angle == 0.0);
  }
  SUBCASE("piecewise-linear knots are checked") {
    CHECK_THROWS_AS(PiecewiseLinear({{0, 1}}), InvalidInput);
    CHECK_THROWS_AS(PiecewiseLinear({{0.1, 1}, {1, 2}}), InvalidInput);
    CHECK_THROWS_AS(PiecewiseLinear({{0, 1}, {0.5, 1}, {0.5, 2}, {1, 2}}), InvalidInput);
  }
  SUBCASE("triangle and polar invariants") {
    CHECK_THROWS_AS(TriangularFN::make(3, 2, 4), InvalidInput);
    CHECK_THROWS_AS(TriangularFN::make(1, 2, NAN), InvalidInput);
    CHECK_THROWS_AS(PolarTriple::make(0, -1, 0), InvalidInput);
    CHECK_THROWS_AS(PolarTriple::make(0, 1, 1.0), InvalidInput);
    CHECK_THROWS_AS(PolarTriple::make(0, 0, 0.1), InvalidInput);
  }
}

TEST_CASE("SideFunction describes itself") {
  const SideFunction e = parse_expression("alpha*2");
  CHECK(e.describe() == "(alpha * 2)");
  const SideFunction p = PiecewiseLinear({{0, 1}, {1, 2}});
  CHECK(p.describe() == "knots[(0,1) (1,2)]");
}
