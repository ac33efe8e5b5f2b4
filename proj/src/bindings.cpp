#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <random>

#include "courbure/expr.hpp"
#include "courbure/geometry.hpp"
#include "courbure/modulus.hpp"
#include "courbure/presets.hpp"
#include "courbure/quasimax.hpp"
#include "courbure/revolution_lab.hpp"
#include "courbure/selftest.hpp"
#include "courbure/solver.hpp"

namespace py = pybind11;
using namespace courbure;

namespace {

py::array_t<double> field_to_array(const ScalarField& f) {
  const Grid& g = f.grid();
  py::array_t<double> out({g.n_t(), g.n_theta()});
  auto buf = out.mutable_unchecked<2>();
  for (int j = 0; j < g.n_t(); ++j)
    for (int i = 0; i < g.n_theta(); ++i) buf(j, i) = f(i, j);
  return out;
}

py::dict solve_cap(double R, int n, const std::string& kappa, double tol) {
  Expr expr = Expr::parse(kappa);
  PrescriptionProblem problem = hyperbolic_cap_problem(
      R, n, [&](double theta, double t, double rho) {
        return expr.eval(theta, t, rho);
      });
  StepControl ctl;
  ctl.newton_tol = tol;
  auto [u, report] = continuation_solve(problem, ctl);

  ScalarField k_rec = gaussian_curvature_chart(scaled_chart(problem.chart, u));
  const Grid& g = *problem.chart.grid;
  double err = 0.0;
  for (int j = 3; j < g.n_t() - 3; ++j)
    for (int i = 0; i < g.n_theta(); ++i)
      err = std::max(err, std::abs(-k_rec(i, j) - problem.kappa(i, j)));

  py::list steps;
  for (const auto& s : report.steps) {
    py::dict d;
    d["t"] = s.t;
    d["newton_iters"] = s.newton_iterations;
    d["residual_sup"] = s.residual_sup;
    d["u_c0"] = s.u_c0;
    d["u_holder_half"] = s.u_holder_half;
    steps.append(d);
  }
  py::dict out;
  out["u"] = field_to_array(u);
  out["kappa"] = field_to_array(problem.kappa);
  out["theta"] = [&] {
    py::array_t<double> a(g.n_theta());
    auto b = a.mutable_unchecked<1>();
    for (int i = 0; i < g.n_theta(); ++i) b(i) = g.theta(i);
    return a;
  }();
  out["t"] = [&] {
    py::array_t<double> a(g.n_t());
    auto b = a.mutable_unchecked<1>();
    for (int j = 0; j < g.n_t(); ++j) b(j) = g.t(j);
    return a;
  }();
  out["steps"] = steps;
  out["converged"] = report.converged;
  out["bounds"] = py::make_tuple(report.bound_lower, report.bound_upper);
  out["bounds_ok"] = report.bounds_ok;
  out["roundtrip_sup_err"] = err;
  return out;
}

py::dict uniformize(const std::string& profile_name, double dr_r,
                    double dr_collar, double rho_max) {
  RevolutionProfile base = profile_by_name(profile_name, dr_r, dr_collar);
  RevolutionProfile profile =
      rho_max > 0.0
          ? RevolutionProfile([&base](double s) { return base.f(s); },
                              [&base](double s) { return base.f_prime(s); },
                              [&base](double s) { return base.f_second(s); },
                              rho_max, base.name())
          : base;
  UniformizationData unif = uniformize_revolution(profile);
  py::dict out;
  out["T"] = unif.T;
  out["c0"] = unif.c0;
  out["conformal_radius"] = unif.conformal_radius;
  out["deriv_norm"] = derivative_at_center(unif);
  return out;
}

py::dict extremal_length(double M, int n, py::array_t<double> density) {
  auto grid = make_grid(n, 0.0, M, n);
  ScalarField dens(grid, 1.0);
  if (density.size() > 0) {
    auto buf = density.unchecked<2>();
    if (buf.shape(0) != n || buf.shape(1) != n)
      throw std::invalid_argument("density must be n x n");
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) dens(i, j) = buf(j, i);
  }
  auto rep = extremal_length_check(dens, M);
  py::dict out;
  out["L"] = rep.loop_length;
  out["area"] = rep.area;
  out["lhs"] = rep.lhs;
  out["bound"] = rep.bound;
  out["slack"] = rep.slack;
  return out;
}

}  // namespace

PYBIND11_MODULE(_courbure, m) {
  m.doc() =
      "Prescribed-curvature solver and conformal geometry lab for disks of "
      "revolution";

  m.def("solve_cap", &solve_cap, py::arg("R"), py::arg("n"), py::arg("kappa"),
        py::arg("tol") = 1e-10,
        "Solve Lap u = e^{2u} kappa - kappa0 on the hyperbolic cap of "
        "radius R (kappa is an expression in theta, t, rho; curvature of "
        "the solved metric is -kappa).");

  m.def(
      "modulus_revolution",
      [](const std::string& profile, double a, double b, double r,
         double collar) {
        return modulus_revolution(profile_by_name(profile, r, collar), a, b);
      },
      py::arg("profile"), py::arg("a"), py::arg("b"), py::arg("r") = 4.0,
      py::arg("collar") = 1.0);

  m.def("uniformize", &uniformize, py::arg("profile"), py::arg("r") = 4.0,
        py::arg("collar") = 1.0, py::arg("rho_max") = -1.0,
        "Rotationally symmetric uniformization data (T, c0, conformal "
        "radius, derivative norm at the center).");

  m.def(
      "dr_sweep",
      [](const std::vector<double>& rs, double collar) {
        py::list out;
        for (const auto& rep : dr_sweep(rs, collar)) {
          py::dict d;
          d["r"] = rep.r;
          d["modulus_cylinder"] = rep.modulus_cylinder;
          d["inner_radius_Cr"] = rep.inner_radius_Cr;
          d["image_radius_Brm1"] = rep.image_radius_Brm1;
          d["deriv_norm"] = rep.deriv_norm;
          d["T"] = rep.T;
          d["c0"] = rep.c0;
          out.append(d);
        }
        return out;
      },
      py::arg("r_values"), py::arg("collar") = 1.0);

  m.def("extremal_length", &extremal_length, py::arg("M"), py::arg("n"),
        py::arg("density") = py::array_t<double>(),
        "Extremal-length check on the flat cylinder of modulus M; density "
        "defaults to the flat metric.");

  m.def(
      "quasimax_trials",
      [](int trials, unsigned long long seed, int nx, int ny) {
        FiniteMetricSpace space = FiniteMetricSpace::grid_graph(nx, ny);
        const std::size_t n = space.size();
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> fv(0.0, 10.0);
        std::uniform_real_distribution<double> pc(0.0, 1.0);
        int pass = 0, fail = 0;
        for (int trial = 0; trial < trials; ++trial) {
          std::vector<double> f(n);
          for (double& v : f) v = pc(rng) < 0.05 ? 0.0 : fv(rng);
          const std::size_t x0 = rng() % n;
          const double C = 1.5 + 1.5 * pc(rng);
          const double A = 0.5 + 1.5 * pc(rng);
          const double alpha = 0.3 + 0.7 * pc(rng);
          const std::size_t x = quasi_maximum(space, f, x0, C, A, alpha);
          const bool ok = f[x] >= f[x0] &&
                          satisfies_quasi_maximum(space, f, x, C, A, alpha);
          ok ? ++pass : ++fail;
        }
        return py::make_tuple(pass, fail);
      },
      py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("nx") = 20,
      py::arg("ny") = 10);
}
