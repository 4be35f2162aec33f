#include <doctest.h>

#include <cmath>

#include "gfc/expr.hpp"
#include "gfc/reporting.hpp"

using namespace gfc;

TEST_CASE("arithmetic expressions evaluate") {
  CHECK(expr::parse("x^2/2")->eval(2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(expr::parse("x^2/2 + 0.25*x^4")->eval(1.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(expr::parse("exp(x)")->eval(1.0) == doctest::Approx(std::exp(1.0)));
  CHECK(expr::parse("ln(exp(2))")->eval(0.0) == doctest::Approx(2.0));
  CHECK(expr::parse("sin(x)^2 + cos(x)^2")->eval(0.7) == doctest::Approx(1.0));
  CHECK(expr::parse("abs(-3*x)")->eval(2.0) == doctest::Approx(6.0));
}

TEST_CASE("precedence and associativity") {
  CHECK(expr::parse("-x^2")->eval(2.0) == doctest::Approx(-4.0));      // ^ binds tighter
  CHECK(expr::parse("2^3^2")->eval(0.0) == doctest::Approx(512.0));    // right-assoc
  CHECK(expr::parse("1 - 2 - 3")->eval(0.0) == doctest::Approx(-4.0)); // left-assoc
  CHECK(expr::parse("6/3/2")->eval(0.0) == doctest::Approx(1.0));
  CHECK(expr::parse("2*(x+1)")->eval(1.5) == doctest::Approx(5.0));
  CHECK(expr::parse("2^-1")->eval(0.0) == doctest::Approx(0.5));
}

TEST_CASE("parse errors carry offsets") {
  CHECK_THROWS_AS(expr::parse("x^^2"), expr::ParseError);
  try {
    expr::parse("x^^2");
  } catch (const expr::ParseError& e) {
    CHECK(e.offset == 2);
  }
  CHECK_THROWS_AS(expr::parse("y + 1"), expr::ParseError);
  CHECK_THROWS_AS(expr::parse("foo(x)"), expr::ParseError);
  CHECK_THROWS_AS(expr::parse("(x"), expr::ParseError);
  CHECK_THROWS_AS(expr::parse("1 +"), expr::ParseError);
  CHECK_THROWS_AS(expr::parse("sin x"), expr::ParseError);
  CHECK_THROWS_AS(expr::parse(""), expr::ParseError);
}

TEST_CASE("printed form re-parses to an evaluation-equivalent tree") {
  const char* samples[] = {"x^2/2",
                           "x^2/2 + 0.25*x^4",
                           "-x^3 + 2*x - 7",
                           "exp(-x^2/2)*cos(3*x)",
                           "ln(abs(x) + 1.5) / (x^2 + 1)",
                           "sin(x)*cos(x^2) - 2^x"};
  DetRng rng(99);
  for (const char* s : samples) {
    const auto tree = expr::parse(s);
    const auto round = expr::parse(expr::to_string(tree));
    for (int i = 0; i < 100; ++i) {
      const double x = 3.0 * rng.next();
      const double a = tree->eval(x);
      const double b = round->eval(x);
      if (std::isfinite(a))
        CHECK(a == doctest::Approx(b).epsilon(1e-14));
    }
  }
}
