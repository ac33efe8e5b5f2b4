#pragma once

#include <Eigen/SparseCore>
#include <stdexcept>
#include <utility>
#include <vector>

#include "courbure/geometry.hpp"
#include "courbure/grid.hpp"

namespace courbure {

// Prescribe curvature -kappa in the conformal class of the chart metric,
// whose own curvature is -kappa0: solve Lap_g u = e^{2u} kappa - kappa0.
// Both stored fields are positive (stored-positive convention).
struct PrescriptionProblem {
  ConformalChart chart;
  ScalarField kappa0;
  ScalarField kappa;

  void validate() const;

  // Dirichlet values on the boundary rings for homotopy parameter t:
  // u = -1/2 log(kappa_t / kappa0), exact when the ratio is locally
  // constant.
  double boundary_value(int i, int j, double t) const;
  ScalarField kappa_t(double t) const;
};

struct StepRecord {
  double t;
  int newton_iterations;
  double residual_sup;
  double u_c0;
  double u_holder_half;
};

struct ContinuationReport {
  std::vector<StepRecord> steps;
  bool converged = false;
  double bound_lower = 0.0;   // a-priori C0 interval for u
  double bound_upper = 0.0;
  bool bounds_ok = false;     // interior extrema inside the interval
};

struct StepControl {
  double initial_step = 1.0;  // first attempt goes straight for t = 1
  double max_step = 0.25;
  double min_step = 1e-4;
  double newton_tol = 1e-10;
  int newton_max_iter = 30;
  bool holder_diagnostic = true;
  HolderOptions holder_options{};
};

struct NewtonFailure : std::runtime_error {
  NewtonFailure(const std::string& what, ScalarField last,
                double residual_norm)
      : std::runtime_error(what),
        last_iterate(std::move(last)),
        residual_sup(residual_norm) {}
  ScalarField last_iterate;
  double residual_sup;
};

struct ContinuationFailure : std::runtime_error {
  ContinuationFailure(const std::string& what, ScalarField last,
                      ContinuationReport partial)
      : std::runtime_error(what),
        last_iterate(std::move(last)),
        report(std::move(partial)) {}
  ScalarField last_iterate;
  ContinuationReport report;
};

// K_t u = Lap_g u - e^{2u} kappa_t + kappa0 at interior nodes, with
// kappa_t = (1-t) kappa0 + t kappa.
ScalarField residual(const ScalarField& u, const PrescriptionProblem& problem,
                     double t);

// Sparse operator v -> Lap_g v - 2 e^{2u} kappa_t v on interior nodes,
// Dirichlet rows eliminated. Row/column order is ring-major over the
// interior rings.
Eigen::SparseMatrix<double> assemble_linearized(const ScalarField& u,
                                                const ScalarField& kappa_t,
                                                const ConformalChart& chart);

// Damped Newton at fixed homotopy parameter t. Throws NewtonFailure with
// the last iterate on nonconvergence.
ScalarField newton_solve(const PrescriptionProblem& problem, double t,
                         const ScalarField& u_init, double tol, int max_iter);

std::pair<ScalarField, ContinuationReport> continuation_solve(
    const PrescriptionProblem& problem, const StepControl& control = {});

// Maximum-principle interval for interior critical values of u:
// [ 1/2 log(inf kappa0 / sup kappa), 1/2 log(sup kappa0 / inf kappa) ].
std::pair<double, double> apriori_c0_bounds(const ScalarField& kappa0,
                                            const ScalarField& kappa);

// True when every interior local extremum of u lies inside
// [lo - slack, hi + slack].
bool extrema_within_bounds(const ScalarField& u, double lo, double hi,
                           double slack);

}  // namespace courbure
