#pragma once

#include <functional>

#include "courbure/geometry.hpp"
#include "courbure/solver.hpp"

namespace courbure {

// Curvature prescription problem on the hyperbolic cap of radius R with
// an n x n chart; kappa_fn(theta, t, rho) gives the stored-positive
// target curvature per node.
inline PrescriptionProblem hyperbolic_cap_problem(
    double R, int n, const std::function<double(double, double, double)>& kappa_fn) {
  auto [chart, kappa0] = poincare_cap_chart(R, n, n);
  ScalarField kappa(chart.grid);
  const Grid& g = *chart.grid;
  for (int j = 0; j < g.n_t(); ++j)
    for (int i = 0; i < g.n_theta(); ++i)
      kappa(i, j) = kappa_fn(g.theta(i), g.t(j),
                             chart.rho_rings[static_cast<std::size_t>(j)]);
  return PrescriptionProblem{std::move(chart), std::move(kappa0),
                             std::move(kappa)};
}

// Conformal factor of the solved metric e^{2u} g, for curvature
// round-trip checks through gaussian_curvature_chart.
inline ConformalChart scaled_chart(const ConformalChart& chart,
                                   const ScalarField& u) {
  ConformalChart out{chart.grid, ScalarField(chart.grid), chart.has_center,
                     chart.center_rho, chart.rho_rings};
  for (std::size_t k = 0; k < chart.grid->node_count(); ++k)
    out.lambda[k] = std::exp(u[k]) * chart.lambda[k];
  return out;
}

}  // namespace courbure
