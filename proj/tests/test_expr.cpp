#include <doctest.h>

#include <cmath>
#include <numbers>

#include "courbure/expr.hpp"

using namespace courbure;

TEST_CASE("arithmetic, precedence and associativity") {
  CHECK(Expr::parse("1 + 2 * 3").eval(0, 0, 0) == 7.0);
  CHECK(Expr::parse("(1 + 2) * 3").eval(0, 0, 0) == 9.0);
  CHECK(Expr::parse("2 ^ 3 ^ 2").eval(0, 0, 0) == 512.0);  // right assoc
  CHECK(Expr::parse("-2 ^ 2").eval(0, 0, 0) == -4.0);
  CHECK(Expr::parse("10 - 4 - 3").eval(0, 0, 0) == 3.0);
  CHECK(Expr::parse("8 / 4 / 2").eval(0, 0, 0) == 1.0);
  CHECK(Expr::parse("1.5e2").eval(0, 0, 0) == 150.0);
}

TEST_CASE("variables and constants") {
  auto e = Expr::parse("theta + 2*t - rho");
  CHECK(e.eval(1.0, 2.0, 3.0) == 2.0);
  CHECK(Expr::parse("pi").eval(0, 0, 0) ==
        doctest::Approx(std::numbers::pi));
}

TEST_CASE("function library") {
  CHECK(Expr::parse("sin(pi/2)").eval(0, 0, 0) == doctest::Approx(1.0));
  CHECK(Expr::parse("cos(0)").eval(0, 0, 0) == 1.0);
  CHECK(Expr::parse("tanh(t)").eval(0, 0.5, 0) ==
        doctest::Approx(std::tanh(0.5)));
  CHECK(Expr::parse("sech(t)").eval(0, 1.2, 0) ==
        doctest::Approx(1.0 / std::cosh(1.2)));
  CHECK(Expr::parse("exp(log(7))").eval(0, 0, 0) == doctest::Approx(7.0));
  CHECK(Expr::parse("sqrt(abs(0 - 9))").eval(0, 0, 0) == 3.0);
  CHECK(Expr::parse("1 + 0.5*sin(theta)*sech(t)").eval(
            std::numbers::pi / 2.0, 0.0, 0.0) == doctest::Approx(1.5));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(Expr::parse(""), ExprError);
  CHECK_THROWS_AS(Expr::parse("1 +"), ExprError);
  CHECK_THROWS_AS(Expr::parse("(1 + 2"), ExprError);
  CHECK_THROWS_AS(Expr::parse("foo(1)"), ExprError);
  CHECK_THROWS_AS(Expr::parse("x + 1"), ExprError);
  CHECK_THROWS_AS(Expr::parse("1 2"), ExprError);
  CHECK_THROWS_AS(Expr::parse("sin 1"), ExprError);
}
