#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "courbure/grid.hpp"

using namespace courbure;
namespace {
constexpr double kPi = std::numbers::pi;

double max_interior_abs_diff(const ScalarField& a, const ScalarField& b) {
  const Grid& g = a.grid();
  double s = 0.0;
  for (int j = 1; j < g.n_t() - 1; ++j)
    for (int i = 0; i < g.n_theta(); ++i)
      s = std::max(s, std::abs(a(i, j) - b(i, j)));
  return s;
}
}  // namespace

TEST_CASE("grid construction validates its invariants") {
  CHECK_THROWS_AS(make_grid(4, 0.0, 1.0, 16), std::invalid_argument);
  CHECK_THROWS_AS(Grid(16, {0.0, 0.1, 0.3}, Topology::Annulus),
                  std::invalid_argument);
  CHECK_THROWS_AS(Grid(16, {1.0, 0.5}, Topology::Annulus),
                  std::invalid_argument);
  auto g = make_grid(16, 0.0, 1.0, 9);
  CHECK(g->h_t() == doctest::Approx(0.125));
  CHECK(g->node_count() == 16 * 9);
  CHECK(g->wrap(-1) == 15);
}

TEST_CASE("flat laplacian kills constants and affine-in-t fields") {
  auto g = make_grid(32, 0.0, 1.0, 17);
  ScalarField c(g, 3.75);
  CHECK(laplacian_flat(c).interior_sup() == 0.0);
  ScalarField aff =
      ScalarField::from_function(g, [](double, double t) { return 2.0 - 7.0 * t; });
  CHECK(laplacian_flat(aff).interior_sup() <= 1e-11);
}

TEST_CASE("flat laplacian is second-order accurate") {
  // analytic oracles: Lap cos(theta) = -cos(theta), Lap t^2 = 2
  double prev_cos = 0.0;
  for (int k = 0; k < 3; ++k) {
    const int n = 32 << k;
    auto g = make_grid(n, 0.0, 1.0, n + 1);
    ScalarField ct =
        ScalarField::from_function(g, [](double th, double) { return std::cos(th); });
    ScalarField expected = ScalarField::from_function(
        g, [](double th, double) { return -std::cos(th); });
    ScalarField lap = laplacian_flat(ct);
    double err_cos = 0.0;
    for (int j = 1; j < g->n_t() - 1; ++j)
      for (int i = 0; i < n; ++i)
        err_cos = std::max(err_cos, std::abs(lap(i, j) - expected(i, j)));
    CHECK(err_cos <= 2.0 * g->h_theta() * g->h_theta());

    ScalarField t2 =
        ScalarField::from_function(g, [](double, double t) { return t * t; });
    ScalarField lap2 = laplacian_flat(t2);
    double err_t2 = 0.0;
    for (int j = 1; j < g->n_t() - 1; ++j)
      for (int i = 0; i < n; ++i)
        err_t2 = std::max(err_t2, std::abs(lap2(i, j) - 2.0));
    CHECK(err_t2 <= 1e-9);

    if (k > 0) CHECK(err_cos <= prev_cos / 3.5);
    prev_cos = err_cos;
  }
}

TEST_CASE("laplacian rejects grids with fewer than 3 rings") {
  auto g = make_grid(16, 0.0, 1.0, 2);
  ScalarField f(g);
  CHECK_THROWS_AS(laplacian_flat(f), std::invalid_argument);
}

TEST_CASE("integration: exact area, periodic cancellation, linearity") {
  auto g = make_grid(64, 0.0, 1.0, 33);
  ScalarField one(g, 1.0);
  CHECK(integrate(one, one) == doctest::Approx(2.0 * kPi).epsilon(1e-10));
  CHECK(integrate(ScalarField(g, 0.0), one) == 0.0);
  ScalarField sth =
      ScalarField::from_function(g, [](double th, double) { return std::sin(th); });
  CHECK(std::abs(integrate(sth, one)) <= 1e-10);

  // linearity and monotonicity
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  ScalarField a(g), b(g);
  for (std::size_t k = 0; k < g->node_count(); ++k) {
    a[k] = d(rng);
    b[k] = d(rng);
  }
  ScalarField sum(g);
  for (std::size_t k = 0; k < g->node_count(); ++k) sum[k] = a[k] + 2.0 * b[k];
  CHECK(integrate(sum, one) ==
        doctest::Approx(integrate(a, one) + 2.0 * integrate(b, one))
            .epsilon(1e-12));
  CHECK(integrate(a, one) >= 0.0);

  auto g2 = make_grid(64, 0.0, 1.0, 17);
  CHECK_THROWS_AS(integrate(one, ScalarField(g2, 1.0)), std::invalid_argument);
}

TEST_CASE("Hoelder seminorm: constants, Lipschitz calibration, alpha order") {
  auto g = make_grid(48, 0.0, 1.0, 49);
  ScalarField unit_density(g, 1.0);
  CHECK(holder_seminorm(ScalarField(g, 2.5), 1.0, unit_density) == 0.0);

  // f = t is 1-Lipschitz for the unit density metric and the bound is
  // attained along vertical grid lines
  ScalarField ft = ScalarField::from_function(g, [](double, double t) { return t; });
  CHECK(holder_seminorm(ft, 1.0, unit_density) == doctest::Approx(1.0).epsilon(1e-9));

  ScalarField smooth = ScalarField::from_function(
      g, [](double th, double t) { return std::sin(th) * t; });
  const double s_half = holder_seminorm(smooth, 0.5, unit_density);
  const double s_one = holder_seminorm(smooth, 1.0, unit_density);
  // the locality radius is 1, so every counted pair has d <= 1 and the
  // alpha = 1 quotient dominates the alpha = 1/2 one
  CHECK(s_one >= s_half);
  CHECK(s_half > 0.0);

  CHECK_THROWS_AS(holder_seminorm(smooth, 1.5, unit_density),
                  std::invalid_argument);
}
