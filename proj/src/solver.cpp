#include "courbure/solver.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <fmt/format.h>
#include <vector>

namespace courbure {

void PrescriptionProblem::validate() const {
  const Grid& g = *chart.grid;
  if (!g.same_as(kappa0.grid()) || !g.same_as(kappa.grid()))
    throw std::invalid_argument("PrescriptionProblem: grid mismatch");
  if (!(kappa0.min() > 0.0))
    throw std::invalid_argument("PrescriptionProblem: inf kappa0 must be > 0");
  if (!(kappa.min() > 0.0))
    throw std::invalid_argument("PrescriptionProblem: inf kappa must be > 0");
  if (!kappa.all_finite() || !kappa0.all_finite())
    throw std::invalid_argument("PrescriptionProblem: fields must be finite");
  if (!(chart.lambda.min() > 0.0))
    throw std::invalid_argument(
        "PrescriptionProblem: conformal factor must be > 0");
}

double PrescriptionProblem::boundary_value(int i, int j, double t) const {
  const double kt = (1.0 - t) * kappa0(i, j) + t * kappa(i, j);
  return -0.5 * std::log(kt / kappa0(i, j));
}

ScalarField PrescriptionProblem::kappa_t(double t) const {
  ScalarField out(chart.grid);
  for (std::size_t k = 0; k < chart.grid->node_count(); ++k)
    out[k] = (1.0 - t) * kappa0[k] + t * kappa[k];
  return out;
}

ScalarField residual(const ScalarField& u, const PrescriptionProblem& problem,
                     double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("residual: t must lie in [0,1]");
  const Grid& g = *problem.chart.grid;
  ScalarField lap = laplace_beltrami(problem.chart, u);
  ScalarField out(problem.chart.grid);
  for (int j = 1; j < g.n_t() - 1; ++j)
    for (int i = 0; i < g.n_theta(); ++i) {
      const double kt =
          (1.0 - t) * problem.kappa0(i, j) + t * problem.kappa(i, j);
      out(i, j) =
          lap(i, j) - std::exp(2.0 * u(i, j)) * kt + problem.kappa0(i, j);
    }
  return out;
}

Eigen::SparseMatrix<double> assemble_linearized(const ScalarField& u,
                                                const ScalarField& kappa_t,
                                                const ConformalChart& chart) {
  const Grid& g = *chart.grid;
  if (!(kappa_t.min() > 0.0))
    throw std::invalid_argument("assemble_linearized: kappa_t must be > 0");
  const int nth = g.n_theta();
  const int nin = g.n_t() - 2;
  const int n = nth * nin;
  auto row = [nth](int i, int j) { return (j - 1) * nth + i; };

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * 5);
  const double ith2 = 1.0 / (g.h_theta() * g.h_theta());
  const double it2 = 1.0 / (g.h_t() * g.h_t());
  for (int j = 1; j <= nin; ++j) {
    for (int i = 0; i < nth; ++i) {
      const double lam = chart.lambda(i, j);
      const double il2 = 1.0 / (lam * lam);
      const double at = il2 * ith2;
      const double av = il2 * it2;
      const int r = row(i, j);
      trip.emplace_back(r, r,
                        -2.0 * (at + av) -
                            2.0 * std::exp(2.0 * u(i, j)) * kappa_t(i, j));
      trip.emplace_back(r, row(g.wrap(i + 1), j), at);
      trip.emplace_back(r, row(g.wrap(i - 1), j), at);
      if (j + 1 <= nin) trip.emplace_back(r, row(i, j + 1), av);
      if (j - 1 >= 1) trip.emplace_back(r, row(i, j - 1), av);
    }
  }
  Eigen::SparseMatrix<double> mat(n, n);
  mat.setFromTriplets(trip.begin(), trip.end());
  return mat;
}

namespace {

double interior_sup_residual(const ScalarField& r) { return r.interior_sup(); }

void set_boundary(ScalarField& u, const PrescriptionProblem& p, double t) {
  const Grid& g = *p.chart.grid;
  for (int i = 0; i < g.n_theta(); ++i) {
    u(i, 0) = p.boundary_value(i, 0, t);
    u(i, g.n_t() - 1) = p.boundary_value(i, g.n_t() - 1, t);
  }
}

struct NewtonResult {
  ScalarField u;
  int iterations;
  double residual_sup;
};

NewtonResult newton_solve_impl(const PrescriptionProblem& problem, double t,
                               const ScalarField& u_init, double tol,
                               int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("newton_solve: tol > 0");
  const Grid& g = *problem.chart.grid;
  const int nth = g.n_theta();
  const int nin = g.n_t() - 2;

  ScalarField u = u_init;
  set_boundary(u, problem, t);
  ScalarField kt = problem.kappa_t(t);

  // rounding floor of the residual evaluation: the stencil weight
  // 1/(lambda^2 h^2) amplifies ulp-level noise in u, worst at the ring
  // where lambda is smallest
  double inv_l2_max = 0.0;
  for (int j = 1; j < g.n_t() - 1; ++j)
    for (int i = 0; i < nth; ++i) {
      const double lam = problem.chart.lambda(i, j);
      inv_l2_max = std::max(inv_l2_max, 1.0 / (lam * lam));
    }
  const double stencil_gain =
      inv_l2_max * (1.0 / (g.h_theta() * g.h_theta()) +
                    1.0 / (g.h_t() * g.h_t()));
  auto noise_floor = [&](const ScalarField& v) {
    double unorm = 1.0;
    for (double x : v.values()) unorm = std::max(unorm, std::abs(x));
    return 4.0 * std::numeric_limits<double>::epsilon() * unorm *
           stencil_gain;
  };

  double rnorm = interior_sup_residual(residual(u, problem, t));
  for (int iter = 0; iter < max_iter; ++iter) {
    if (rnorm <= tol) return {std::move(u), iter, rnorm};

    ScalarField r = residual(u, problem, t);
    Eigen::VectorXd rhs(nth * nin);
    for (int j = 1; j <= nin; ++j)
      for (int i = 0; i < nth; ++i) rhs[(j - 1) * nth + i] = -r(i, j);

    Eigen::SparseMatrix<double> L = assemble_linearized(u, kt, problem.chart);
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(L);
    if (lu.info() != Eigen::Success)
      throw NewtonFailure("newton_solve: singular linearized system", u,
                          rnorm);
    Eigen::VectorXd delta = lu.solve(rhs);

    // step halving until the residual norm actually decreases
    double alpha = 1.0;
    bool accepted = false;
    for (int half = 0; half < 12; ++half) {
      ScalarField trial = u;
      for (int j = 1; j <= nin; ++j)
        for (int i = 0; i < nth; ++i)
          trial(i, j) += alpha * delta[(j - 1) * nth + i];
      const double tn = interior_sup_residual(residual(trial, problem, t));
      if (tn < rnorm) {
        u = std::move(trial);
        rnorm = tn;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      // stagnation at the rounding floor counts as convergence even when
      // the requested tol is below what the evaluation can resolve
      if (rnorm <= noise_floor(u)) return {std::move(u), iter, rnorm};
      throw NewtonFailure("newton_solve: damping failed to reduce residual",
                          u, rnorm);
    }
  }
  if (rnorm <= tol) return {std::move(u), max_iter, rnorm};
  throw NewtonFailure(
      fmt::format("newton_solve: no convergence in {} iterations "
                  "(residual {:.3e})",
                  max_iter, rnorm),
      u, rnorm);
}

}  // namespace

ScalarField newton_solve(const PrescriptionProblem& problem, double t,
                         const ScalarField& u_init, double tol, int max_iter) {
  problem.validate();
  return newton_solve_impl(problem, t, u_init, tol, max_iter).u;
}

std::pair<double, double> apriori_c0_bounds(const ScalarField& kappa0,
                                            const ScalarField& kappa) {
  if (!(kappa0.min() > 0.0 && kappa.min() > 0.0))
    throw std::invalid_argument("apriori_c0_bounds: fields must be positive");
  return {0.5 * std::log(kappa0.min() / kappa.max()),
          0.5 * std::log(kappa0.max() / kappa.min())};
}

bool extrema_within_bounds(const ScalarField& u, double lo, double hi,
                           double slack) {
  const Grid& g = u.grid();
  for (int j = 1; j < g.n_t() - 1; ++j)
    for (int i = 0; i < g.n_theta(); ++i) {
      const double c = u(i, j);
      const double nb[4] = {u(i + 1, j), u(i - 1, j), u(i, j + 1),
                            u(i, j - 1)};
      const bool is_max =
          c >= nb[0] && c >= nb[1] && c >= nb[2] && c >= nb[3];
      const bool is_min =
          c <= nb[0] && c <= nb[1] && c <= nb[2] && c <= nb[3];
      if (is_max && c > hi + slack) return false;
      if (is_min && c < lo - slack) return false;
    }
  return true;
}

std::pair<ScalarField, ContinuationReport> continuation_solve(
    const PrescriptionProblem& problem, const StepControl& control) {
  problem.validate();
  const Grid& g = *problem.chart.grid;
  ContinuationReport report;

  ScalarField u(problem.chart.grid, 0.0);
  double t = 0.0;
  double step = control.initial_step;

  auto record = [&](double tt, const NewtonResult& res) {
    StepRecord rec;
    rec.t = tt;
    rec.newton_iterations = res.iterations;
    rec.residual_sup = res.residual_sup;
    double c0 = 0.0;
    for (double v : res.u.values()) c0 = std::max(c0, std::abs(v));
    rec.u_c0 = c0;
    rec.u_holder_half =
        control.holder_diagnostic
            ? holder_seminorm(res.u, 0.5, problem.chart.lambda,
                              control.holder_options)
            : 0.0;
    report.steps.push_back(rec);
  };

  while (t < 1.0) {
    const double t_try = std::min(t + step, 1.0);
    try {
      NewtonResult res = newton_solve_impl(problem, t_try, u,
                                           control.newton_tol,
                                           control.newton_max_iter);
      record(t_try, res);
      u = std::move(res.u);
      t = t_try;
      step = std::min(step * 2.0, control.max_step);
    } catch (const NewtonFailure&) {
      step *= 0.5;
      if (step < control.min_step)
        throw ContinuationFailure(
            fmt::format("continuation_solve: step underflow at t = {:.6f}",
                        t),
            u, report);
    }
  }

  auto [lo, hi] = apriori_c0_bounds(problem.kappa0, problem.kappa);
  const double h = std::max(g.h_theta(), g.h_t());
  report.bound_lower = lo;
  report.bound_upper = hi;
  report.bounds_ok = extrema_within_bounds(u, lo, hi, 10.0 * h * h);
  report.converged = true;
  return {std::move(u), std::move(report)};
}

}  // namespace courbure
