#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "doctest.h"
#include "fuzzcurve/errors.hpp"
#include "fuzzcurve/expr.hpp"
#include "oracles.hpp"

using namespace fuzzcurve;
using fuzzcurve::testing::kExampleLower;
using fuzzcurve::testing::kExampleUpper;
constexpr double pi = std::numbers::pi;

TEST_CASE("parse: worked example sides") {
  const auto u = parse_expression("-pi*alpha^4 + 2*pi");
  CHECK(u.eval(0.0) == doctest::Approx(2 * pi).epsilon(1e-15));

  const auto d = parse_expression("pi + (cos(1+1/3))^2 - (cos(alpha+1/3))^2");
  CHECK(std::abs(d.eval(1.0) - pi) < 1e-15);
}

TEST_CASE("eval_dual: identity and power rule") {
  const auto id = parse_expression("alpha");
  const auto v = eval_dual(id, 0.37);
  CHECK(v.value == 0.37);
  CHECK(v.deriv == 1.0);

  const auto u = eval_dual(parse_expression("-pi*alpha^4+2*pi"), 1.0);
  CHECK(u.value == doctest::Approx(pi).epsilon(1e-15));
  CHECK(u.deriv == doctest::Approx(-4 * pi).epsilon(1e-15));
}

TEST_CASE("eval_dual: d'(alpha) of the example matches finite differences") {
  const auto d = parse_expression(kExampleLower);
  const auto dprime = parse_expression("2*cos(alpha+1/3)*sin(alpha+1/3)");
  auto f = [&](double a) { return d.eval(a); };
  const double fd = fuzzcurve::testing::richardson_derivative(f, 0.5, 1e-5 * 64);
  CHECK(std::abs(dprime.eval(0.5) - fd) <= 1e-8);
  CHECK(std::abs(d.eval_dual(0.5).deriv - fd) <= 1e-8);
}

TEST_CASE("precedence and associativity") {
  auto at = [](const char* s, double a = 0.0) { return parse_expression(s).eval(a); };
  CHECK(at("-2^2") == -4.0);
  CHECK(at("2^3^2") == 512.0);
  CHECK(at("2*3+4") == 10.0);
  CHECK(at("2+3*4") == 14.0);
  CHECK(at("1/2/4") == 0.125);
  CHECK(at("8-2-1") == 5.0);
  CHECK(at("2^-1") == 0.5);
  CHECK(at("--alpha", 3.0) == 3.0);
  CHECK(at("+alpha", 3.0) == 3.0);
  CHECK(at(".25 + 1.5e1 + 2E-1") == doctest::Approx(15.45));
  CHECK(at("abs(-2) + exp(0) + ln(1) + sqrt(4) + arccos(1)") == 5.0);
}

TEST_CASE("syntax errors carry offset and expected tokens") {
  SUBCASE("missing operand") {
    try {
      parse_expression("1 + * 2");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset() == 4);
      CHECK(!e.expected().empty());
    }
  }
  SUBCASE("unbalanced parenthesis") {
    try {
      parse_expression("(alpha + 1");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset() == 10);
      REQUIRE(e.expected().size() == 1);
      CHECK(e.expected()[0] == "')'");
    }
  }
  SUBCASE("function without call") { CHECK_THROWS_AS(parse_expression("sin alpha"), ParseError); }
  SUBCASE("trailing token") {
    try {
      parse_expression("alpha 2");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset() == 6);
    }
  }
  SUBCASE("empty") { CHECK_THROWS_AS(parse_expression("   "), ParseError); }
  SUBCASE("bad character") {
    try {
      parse_expression("alpha % 2");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset() == 6);
    }
  }
  SUBCASE("malformed exponent") { CHECK_THROWS_AS(parse_expression("1e+"), ParseError); }
}

TEST_CASE("unknown identifiers") {
  try {
    parse_expression("2*beta + 1");
    FAIL("expected UnknownIdentifierError");
  } catch (const UnknownIdentifierError& e) {
    CHECK(e.identifier() == "beta");
    CHECK(e.offset() == 2);
  }
  CHECK_THROWS_AS(parse_expression("tan(alpha)"), UnknownIdentifierError);
  CHECK_THROWS_AS(parse_expression("x"), UnknownIdentifierError);
}

TEST_CASE("domain errors name the failing subexpression") {
  auto domain_sub = [](const char* s, double a) -> std::string {
    try {
      parse_expression(s).eval_dual(a);
    } catch (const DomainError& e) {
      return e.subexpression();
    }
    return "<no error>";
  };
  CHECK(domain_sub("1 + arccos(2*alpha)", 0.75) == "arccos((2 * alpha))");
  CHECK(domain_sub("1/(alpha - 0.5)", 0.5) == "(1 / (alpha - 0.5))");
  CHECK(domain_sub("(alpha - 1)^0.5", 0.0) == "((alpha - 1) ^ 0.5)");
  CHECK(domain_sub("ln(alpha)", 0.0) == "ln(alpha)");
  CHECK(domain_sub("sqrt(alpha - 1)", 0.5) == "sqrt((alpha - 1))");
  // Value exists but the derivative is unbounded.
  CHECK(domain_sub("sqrt(alpha)", 0.0) == "sqrt(alpha)");
  CHECK(domain_sub("alpha^0.5", 0.0) == "(alpha ^ 0.5)");
  CHECK(domain_sub("0^(-1)", 0.0) == "(0 ^ (-1))");
  // exp(exp(10)) already overflows.
  CHECK(domain_sub("exp(exp(exp(10)))", 0.0) == "exp(exp(10))");

  // Integer powers of negative bases are fine.
  CHECK(parse_expression("(alpha - 1)^3").eval(0.0) == -1.0);
  // Non-integer power at a zero base with zero derivative is fine.
  CHECK(parse_expression("(alpha - alpha)^0.5").eval(0.3) == 0.0);
}

TEST_CASE("variable exponent uses the general power rule") {
  const auto e = parse_expression("alpha^alpha");
  const auto v = e.eval_dual(0.5);
  CHECK(v.value == doctest::Approx(std::pow(0.5, 0.5)));
  CHECK(v.deriv == doctest::Approx(std::pow(0.5, 0.5) * (std::log(0.5) + 1.0)));
}

TEST_CASE("printing round-trips to an identical tree") {
  fuzzcurve::testing::RandomExprGenerator gen(7);
  for (int i = 0; i < 500; ++i) {
    const Expression e = gen.next(5);
    const Expression back = parse_expression(e.to_string());
    REQUIRE_MESSAGE(structurally_equal(e, back), e.to_string());
    CHECK(back.eval(0.3) == e.eval(0.3));
  }
  for (const char* s : {kExampleLower, kExampleUpper, "1e+300 * alpha", "0.1 + 1e-07"}) {
    const Expression e = parse_expression(s);
    CHECK(structurally_equal(e, parse_expression(e.to_string())));
  }
}

TEST_CASE("central differences converge at second order towards the dual derivative") {
  fuzzcurve::testing::RandomExprGenerator gen(11);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pick(0.05, 0.95);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const Expression e = gen.next(4);
    const double a = pick(rng);
    const double exact = e.eval_dual(a).deriv;
    auto f = [&](double x) { return e.eval(x); };
    const double err3 = std::abs(fuzzcurve::testing::central_difference(f, a, 1e-3) - exact);
    const double err4 = std::abs(fuzzcurve::testing::central_difference(f, a, 1e-4) - exact);
    // Fit C from h = 1e-3 and require h = 1e-4 to follow C h^2, up to rounding.
    const double c = err3 / 1e-6;
    const double roundoff = 1e-16 * std::max(1.0, std::abs(e.eval(a))) / 1e-4 * 10.0;
    CHECK_MESSAGE(err4 <= 2.0 * c * 1e-8 + roundoff, e.to_string());
    ++checked;
  }
  CHECK(checked == 300);
}

TEST_CASE("expressions can be evaluated concurrently") {
  const Expression e = parse_expression(kExampleLower);
  std::vector<double> serial;
  for (int i = 0; i <= 1000; ++i) serial.push_back(e.eval(i / 1000.0));

  std::vector<std::vector<double>> results(4);
  std::vector<std::thread> threads;
  for (auto& r : results) {
    threads.emplace_back([&e, &r] {
      for (int i = 0; i <= 1000; ++i) r.push_back(e.eval(i / 1000.0));
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& r : results) CHECK(r == serial);
}

TEST_CASE("builders reject malformed nodes") {
  CHECK_THROWS_AS(Expression::constant(-1.0), InvalidInput);
  CHECK_THROWS_AS(Expression::unary(Op::Add, Expression::variable()), InvalidInput);
  CHECK_THROWS_AS(Expression::binary(Op::Sin, Expression::variable(), Expression::variable()), InvalidInput);
  CHECK(parse_expression("sin(alpha)*2").node_count() == 4);
}
