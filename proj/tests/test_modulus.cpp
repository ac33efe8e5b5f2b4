#include <doctest.h>

#include <cmath>
#include <numbers>

#include "courbure/modulus.hpp"

using namespace courbure;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("revolution modulus closed forms and additivity") {
  auto hyp = RevolutionProfile::hyperbolic();
  const double a = 0.8, b = 2.3;
  const double expected =
      std::log(std::tanh(b / 2.0) / std::tanh(a / 2.0));
  CHECK(modulus_revolution(hyp, a, b) ==
        doctest::Approx(expected).epsilon(1e-11));
  CHECK(modulus_revolution(hyp, 1.3, 1.3) == 0.0);

  const double m_ac = modulus_revolution(hyp, 0.5, 3.0);
  const double m_ab = modulus_revolution(hyp, 0.5, 1.4);
  const double m_bc = modulus_revolution(hyp, 1.4, 3.0);
  CHECK(std::abs(m_ac - m_ab - m_bc) <= 1e-10);

  // cylinder segment of the glued family has modulus exactly r
  auto p = RevolutionProfile::dr(4.0);
  CHECK(modulus_revolution(p, 4.0, p.rho_max()) ==
        doctest::Approx(4.0).epsilon(1e-11));

  CHECK_THROWS_AS(modulus_revolution(hyp, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("modulus is a function of the conformal structure only") {
  auto hyp = RevolutionProfile::hyperbolic();
  const double m1 = modulus_revolution(hyp, 0.7, 2.1);
  const double m2 = modulus_revolution(hyp, 0.7, 2.1);
  CHECK(m1 == m2);  // deterministic, bit-equal
}

TEST_CASE("modulus monotonicity for nested annuli") {
  auto hyp = RevolutionProfile::hyperbolic();
  CHECK(monotonicity_check(hyp, 1.0, 2.0, 0.5, 3.0));
  CHECK(modulus_revolution(hyp, 1.0, 2.0) <
        modulus_revolution(hyp, 0.5, 3.0));
  CHECK(monotonicity_check(hyp, 1.0, 2.0, 1.0, 2.0));
  CHECK_THROWS_AS(monotonicity_check(hyp, 0.5, 3.0, 1.0, 2.0),
                  std::invalid_argument);

  // first-order growth of the modulus in the outer radius
  const double b = 2.0, eps = 1e-4;
  const double grow = modulus_revolution(hyp, 1.0, b + eps) -
                      modulus_revolution(hyp, 1.0, b);
  CHECK(std::abs(grow - eps / hyp.f(b)) <= 1e-8);
}

TEST_CASE("shortest essential loop on the flat cylinder") {
  auto g = make_grid(96, 0.0, 1.0, 97);
  ScalarField one(g, 1.0);
  CHECK(shortest_essential_loop(one) ==
        doctest::Approx(2.0 * kPi).epsilon(1e-12));
  ScalarField two(g, 2.0);
  CHECK(shortest_essential_loop(two) ==
        doctest::Approx(2.0 * shortest_essential_loop(one)).epsilon(1e-12));
}

TEST_CASE("extremal length: equality case and cheap-band degeneration") {
  const double M = 1.0;
  auto g = make_grid(128, 0.0, M, 128);
  ScalarField flat(g, 1.0);
  auto rep = extremal_length_check(flat, M);
  CHECK(rep.area == doctest::Approx(2.0 * kPi * M).epsilon(1e-12));
  CHECK(rep.lhs <= rep.bound + 0.02 * rep.bound);
  CHECK(rep.slack <= 0.02 * rep.bound);

  // mass concentrated on a band leaves a cheap winding corridor
  ScalarField banded = ScalarField::from_function(g, [M](double, double t) {
    return std::abs(t - 0.5 * M) < 0.1 * M ? 10.0 : 0.1;
  });
  auto rep2 = extremal_length_check(banded, M);
  CHECK(rep2.lhs < 0.5 * rep2.bound);

  ScalarField bad(g, 0.0);
  CHECK_THROWS_AS(extremal_length_check(bad, M), std::invalid_argument);
}

TEST_CASE("extremal length report is invariant under density scaling") {
  const double M = 0.7;
  auto g = make_grid(64, 0.0, M, 64);
  ScalarField d1 = ScalarField::from_function(
      g, [](double th, double t) { return std::exp(0.3 * std::sin(th) + t); });
  ScalarField d2(g);
  for (std::size_t k = 0; k < g->node_count(); ++k) d2[k] = 2.0 * d1[k];
  auto r1 = extremal_length_check(d1, M);
  auto r2 = extremal_length_check(d2, M);
  CHECK(r1.lhs == doctest::Approx(r2.lhs).epsilon(1e-13));
  CHECK(r2.area == doctest::Approx(4.0 * r1.area).epsilon(1e-13));
}
