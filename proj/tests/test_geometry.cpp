#include <doctest.h>

#include <cmath>
#include <numbers>

#include "courbure/geometry.hpp"
#include "courbure/presets.hpp"

using namespace courbure;

namespace {
double interior_sup_diff(const ScalarField& f, double value, int skip = 1) {
  const Grid& g = f.grid();
  double s = 0.0;
  for (int j = skip; j < g.n_t() - skip; ++j)
    for (int i = 0; i < g.n_theta(); ++i)
      s = std::max(s, std::abs(f(i, j) - value));
  return s;
}
}  // namespace

TEST_CASE("conformal coordinate closed forms") {
  auto hyp = RevolutionProfile::hyperbolic();
  // antiderivative of 1/sinh is log tanh(s/2)
  const double expected = std::log(std::tanh(1.0)) - std::log(std::tanh(0.5));
  CHECK(conformal_coordinate(hyp, 2.0) == doctest::Approx(expected).epsilon(1e-11));
  CHECK(conformal_coordinate(hyp, 1.0) == 0.0);

  auto flat = RevolutionProfile::euclidean();
  CHECK(conformal_coordinate(flat, std::numbers::e) ==
        doctest::Approx(1.0).epsilon(1e-11));
  CHECK_THROWS_AS(conformal_coordinate(flat, -1.0), std::invalid_argument);
}

TEST_CASE("profile curvature: sinh, linear, sin") {
  auto hyp = RevolutionProfile::hyperbolic();
  CHECK(hyp.curvature(0.7) == doctest::Approx(-1.0));
  CHECK(hyp.curvature(0.0) == doctest::Approx(-1.0).epsilon(1e-6));
  auto flat = RevolutionProfile::euclidean();
  CHECK(flat.curvature(1.3) == 0.0);
  CHECK(flat.curvature(0.0) == doctest::Approx(0.0).epsilon(1e-9));
  auto sph = RevolutionProfile::sphere_cap(1.5);
  CHECK(sph.curvature(0.9) == doctest::Approx(1.0));
  CHECK(sph.curvature(0.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("cap-plus-cylinder profile: curvature regimes and blend") {
  const double r = 3.0, collar = 1.0;
  auto p = RevolutionProfile::dr(r, collar);
  CHECK(p.rho_max() == doctest::Approx(r + r * std::sinh(r)));
  // exactly hyperbolic below the collar
  CHECK(p.curvature(r - collar) == doctest::Approx(-1.0));
  CHECK(p.curvature(0.5) == doctest::Approx(-1.0));
  // flat on the cylinder
  CHECK(p.curvature(r + 0.5) == 0.0);
  CHECK(p.curvature(p.rho_max() - 1.0) == 0.0);
  // C^1 continuity at the blend ends
  const double eps = 1e-7;
  CHECK(p.f(r - collar + eps) ==
        doctest::Approx(std::sinh(r - collar)).epsilon(1e-6));
  CHECK(p.f_prime(r - eps) == doctest::Approx(0.0).epsilon(1e-5));
  // monotone through the blend
  double prev = p.f(r - collar);
  for (int k = 1; k <= 50; ++k) {
    const double s = r - collar + collar * k / 50.0;
    CHECK(p.f(s) >= prev - 1e-12);
    prev = p.f(s);
  }
  // cylinder segment has conformal length exactly r
  const double len = conformal_coordinate(p, p.rho_max()) -
                     conformal_coordinate(p, r);
  CHECK(len == doctest::Approx(r).epsilon(1e-11));
  CHECK_THROWS_AS(RevolutionProfile::dr(1.5), std::invalid_argument);
}

TEST_CASE("charts from profiles: lambda sampling and cap contract") {
  auto [chart, kappa0] = poincare_cap_chart(4.0, 32, 48);
  CHECK(chart.has_center);
  CHECK(chart.center_rho < 0.01 * 4.0);
  CHECK(kappa0.min() == 1.0);
  // lambda(t(rho)) = f(rho) = sinh(rho)
  auto hyp = RevolutionProfile::hyperbolic();
  for (int j : {0, 10, 47}) {
    const double rho = chart.rho_rings[static_cast<std::size_t>(j)];
    CHECK(chart.lambda(0, j) == doctest::Approx(std::sinh(rho)).epsilon(1e-9));
    CHECK(conformal_coordinate(hyp, rho) ==
          doctest::Approx(chart.grid->t(j)).epsilon(1e-9));
  }
}

TEST_CASE("Laplace-Beltrami reduces to the flat laplacian when lambda = 1") {
  auto g = make_grid(24, 0.0, 1.0, 17);
  ConformalChart chart{g, ScalarField(g, 1.0)};
  ScalarField f = ScalarField::from_function(
      g, [](double th, double t) { return std::cos(th) * t; });
  ScalarField a = laplace_beltrami(chart, f);
  ScalarField b = laplacian_flat(f);
  double diff = 0.0;
  for (std::size_t k = 0; k < g->node_count(); ++k)
    diff = std::max(diff, std::abs(a[k] - b[k]));
  CHECK(diff == 0.0);
  CHECK(laplace_beltrami(chart, ScalarField(g, 4.2)).interior_sup() == 0.0);
}

TEST_CASE("chart curvature matches the profile oracle with O(h^2) decay") {
  // K = -lambda^{-2} Lap log lambda should recover K = -1 on the
  // hyperbolic cap; Lap_g log lambda itself should be +1
  double prev = 0.0;
  for (int k = 0; k < 2; ++k) {
    const int n = 48 << k;
    auto [chart, kappa0] = poincare_cap_chart(3.0, n, n);
    ScalarField K = gaussian_curvature_chart(chart);
    // measure on a fixed t-band (skip proportional to n) so the sup is
    // taken over the same region at every resolution
    const double err = interior_sup_diff(K, -1.0, n / 8);
    if (k > 0) CHECK(err <= prev / 3.5);
    prev = err;
    CHECK(err <= 0.1);

    ScalarField loglam(chart.grid);
    for (std::size_t m = 0; m < chart.grid->node_count(); ++m)
      loglam[m] = std::log(chart.lambda[m]);
    ScalarField lb = laplace_beltrami(chart, loglam);
    CHECK(interior_sup_diff(lb, 1.0, n / 8) <= 0.1);
  }
  auto g = make_grid(16, 0.0, 1.0, 8);
  ConformalChart flat{g, ScalarField(g, 2.0)};
  CHECK(gaussian_curvature_chart(flat).interior_sup() == 0.0);
  ConformalChart bad{g, ScalarField(g, -1.0)};
  CHECK_THROWS_AS(gaussian_curvature_chart(bad), std::invalid_argument);
}

TEST_CASE("conformal change of curvature") {
  auto [chart, kappa0] = poincare_cap_chart(3.0, 48, 48);

  SUBCASE("identity and constant rescaling") {
    ScalarField zero(chart.grid, 0.0);
    ScalarField k = conformal_change_curvature(kappa0, zero, chart);
    CHECK(interior_sup_diff(k, 1.0) == 0.0);

    ScalarField u(chart.grid, -std::log(2.0));
    ScalarField k4 = conformal_change_curvature(kappa0, u, chart);
    CHECK(interior_sup_diff(k4, 4.0) <= 1e-10);
  }

  SUBCASE("Poincare factor over a flat background gives curvature -1") {
    // flat disk chart: |z| = e^t, lambda = e^t, kappa0 = 0;
    // u = log(2/(1-|z|^2)) turns it into the hyperbolic disk
    double prev = 0.0;
    for (int k = 0; k < 2; ++k) {
      const int n = 48 << k;
      auto g = make_grid(n, -3.0, -0.1, n);
      ConformalChart flat{
          g, ScalarField::from_function(g, [](double, double t) {
            return std::exp(t);
          })};
      ScalarField zero(g, 0.0);
      ScalarField u = ScalarField::from_function(g, [](double, double t) {
        return std::log(2.0 / (1.0 - std::exp(2.0 * t)));
      });
      ScalarField kap = conformal_change_curvature(zero, u, flat);
      const double err = interior_sup_diff(kap, 1.0, n / 8);
      if (k > 0) CHECK(err <= prev / 3.5);
      prev = err;
      CHECK(err <= 0.05);
    }
  }

  SUBCASE("backward change recovers the background exactly") {
    ScalarField u = ScalarField::from_function(
        chart.grid, [](double th, double t) {
          return 0.3 * std::sin(th) * std::exp(-t * t);
        });
    ScalarField kappa = conformal_change_curvature(kappa0, u, chart);
    ConformalChart tilde = scaled_chart(chart, u);
    ScalarField minus_u(chart.grid);
    for (std::size_t m = 0; m < chart.grid->node_count(); ++m)
      minus_u[m] = -u[m];
    ScalarField back = conformal_change_curvature(kappa, minus_u, tilde);
    double diff = 0.0;
    const Grid& g = *chart.grid;
    for (int j = 1; j < g.n_t() - 1; ++j)
      for (int i = 0; i < g.n_theta(); ++i)
        diff = std::max(diff, std::abs(back(i, j) - kappa0(i, j)));
    CHECK(diff <= 1e-10);
  }
}

TEST_CASE("uniformization closed forms") {
  SUBCASE("complete hyperbolic plane") {
    auto unif = uniformize_revolution(RevolutionProfile::hyperbolic());
    CHECK(unif.conformal_radius == doctest::Approx(2.0).epsilon(1e-8));
    // T - c0 = log 2 from t(rho) = log tanh(rho/2) - log tanh(1/2)
    CHECK(unif.T - unif.c0 == doctest::Approx(std::log(2.0)).epsilon(1e-8));
  }
  SUBCASE("truncated flat disk is a scaled Riemann map") {
    auto unif = uniformize_revolution(RevolutionProfile::euclidean(7.5));
    CHECK(unif.T == doctest::Approx(std::log(7.5)).epsilon(1e-10));
    CHECK(unif.c0 == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(unif.conformal_radius == doctest::Approx(7.5).epsilon(1e-8));
    // radius map is monotone with the right endpoints
    double prev = 0.0;
    for (double rho : {0.5, 2.0, 5.0, 7.4}) {
      const double rad = unif.radius(rho);
      CHECK(rad > prev);
      prev = rad;
    }
    CHECK(unif.radius(7.5) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("complete flat plane is parabolic") {
    CHECK_THROWS_AS(uniformize_revolution(RevolutionProfile::euclidean()),
                    NotConformallyHyperbolic);
  }
}
