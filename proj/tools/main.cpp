#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "courbure/csv.hpp"
#include "courbure/expr.hpp"
#include "courbure/geometry.hpp"
#include "courbure/modulus.hpp"
#include "courbure/presets.hpp"
#include "courbure/quasimax.hpp"
#include "courbure/revolution_lab.hpp"
#include "courbure/selftest.hpp"
#include "courbure/solver.hpp"

namespace {

using namespace courbure;

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t next = csv.find(',', pos);
    if (next == std::string::npos) next = csv.size();
    out.push_back(std::stod(csv.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

int cmd_solve(const std::string& preset, double R, int n,
              const std::string& kappa_text, double tol,
              const std::string& out_dir) {
  if (preset != "hyperbolic") {
    std::cerr << "solve: unsupported preset '" << preset
              << "' (expected: hyperbolic)\n";
    return 1;
  }
  Expr kappa_expr = Expr::parse(kappa_text);
  PrescriptionProblem problem = hyperbolic_cap_problem(
      R, n, [&](double theta, double t, double rho) {
        return kappa_expr.eval(theta, t, rho);
      });
  problem.validate();

  StepControl ctl;
  ctl.newton_tol = tol;

  ScalarField u(problem.chart.grid);
  ContinuationReport report;
  int exit_code = 0;
  try {
    std::tie(u, report) = continuation_solve(problem, ctl);
  } catch (const ContinuationFailure& f) {
    std::cerr << "solve: " << f.what() << "\n";
    u = f.last_iterate;
    report = f.report;
    exit_code = 2;
  }

  std::filesystem::create_directories(out_dir);
  {
    CsvWriter csv({"theta", "t", "u", "kappa_recomputed", "kappa_target",
                   "abs_err"});
    ScalarField k_rec = gaussian_curvature_chart(scaled_chart(problem.chart, u));
    const Grid& g = *problem.chart.grid;
    for (int j = 1; j < g.n_t() - 1; ++j)
      for (int i = 0; i < g.n_theta(); ++i) {
        const double rec = -k_rec(i, j);  // stored-positive convention
        csv.row({g.theta(i), g.t(j), u(i, j), rec, problem.kappa(i, j),
                 std::abs(rec - problem.kappa(i, j))});
      }
    csv.write(std::filesystem::path(out_dir) / "u.csv");
  }
  {
    CsvWriter csv({"t", "newton_iters", "residual_sup", "u_c0",
                   "u_holder_half"});
    for (const auto& s : report.steps)
      csv.row({s.t, static_cast<double>(s.newton_iterations), s.residual_sup,
               s.u_c0, s.u_holder_half});
    csv.write(std::filesystem::path(out_dir) / "report.csv");
  }
  if (exit_code == 0)
    std::cout << fmt::format(
        "converged in {} continuation step(s); final residual {:.3e}\n",
        report.steps.size(),
        report.steps.empty() ? 0.0 : report.steps.back().residual_sup);
  return exit_code;
}

int cmd_modulus(const std::string& profile_name, double a, double b,
                double dr_r, double collar) {
  RevolutionProfile profile = profile_by_name(profile_name, dr_r, collar);
  std::cout << fmt::format("{:.13e}\n", modulus_revolution(profile, a, b));
  return 0;
}

void write_svg_plot(const std::filesystem::path& path,
                    const std::vector<DrReport>& reports) {
  // log-scale plot: derivative norm (rising) and image radii (falling)
  const double W = 640, H = 420, L = 70, B = 40;
  double rmin = reports.front().r, rmax = reports.back().r;
  double ymin = 0, ymax = 0;
  for (const auto& rep : reports) {
    ymin = std::min({ymin, std::log10(rep.image_radius_Brm1)});
    ymax = std::max({ymax, std::log10(rep.deriv_norm)});
  }
  auto X = [&](double r) {
    return L + (W - L - 20) * (r - rmin) / (rmax - rmin);
  };
  auto Y = [&](double v) {
    return H - B - (H - B - 20) * (std::log10(v) - ymin) / (ymax - ymin);
  };
  auto poly = [&](auto get, const char* color) {
    std::string pts;
    for (const auto& rep : reports)
      pts += fmt::format("{:.1f},{:.1f} ", X(rep.r), Y(get(rep)));
    return fmt::format(
        "<polyline fill='none' stroke='{}' stroke-width='2' points='{}'/>\n",
        color, pts);
  };
  std::ofstream out(path);
  out << fmt::format(
      "<svg xmlns='http://www.w3.org/2000/svg' width='{}' height='{}'>\n",
      W, H);
  out << fmt::format(
      "<line x1='{0}' y1='20' x2='{0}' y2='{1}' stroke='black'/>\n"
      "<line x1='{0}' y1='{1}' x2='{2}' y2='{1}' stroke='black'/>\n",
      L, H - B, W - 20);
  out << poly([](const DrReport& d) { return d.deriv_norm; }, "crimson");
  out << poly([](const DrReport& d) { return d.inner_radius_Cr; }, "steelblue");
  out << poly([](const DrReport& d) { return d.image_radius_Brm1; }, "seagreen");
  out << fmt::format(
      "<text x='{}' y='{}' font-size='12'>r</text>\n"
      "<text x='10' y='16' font-size='12'>log10: deriv norm (red), inner "
      "radius C_r (blue), image of B_(r-1) (green)</text>\n",
      W - 14, H - B + 16);
  out << "</svg>\n";
}

int cmd_drlab(const std::string& r_list, double collar,
              const std::string& out_file, const std::string& plot_file) {
  std::vector<double> rs = parse_list(r_list);
  auto reports = dr_sweep(rs, collar);
  CsvWriter csv({"r", "modulus_cylinder", "inner_radius_Cr",
                 "image_radius_Brm1", "e_minus_r", "deriv_norm", "T", "c0"});
  for (const auto& rep : reports)
    csv.row({rep.r, rep.modulus_cylinder, rep.inner_radius_Cr,
             rep.image_radius_Brm1, std::exp(-rep.r), rep.deriv_norm, rep.T,
             rep.c0});
  if (out_file == "-")
    std::cout << csv.str();
  else
    csv.write(out_file);
  if (!plot_file.empty()) write_svg_plot(plot_file, reports);
  return 0;
}

int cmd_quasimax(int trials, unsigned long long seed, int nx, int ny) {
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
    const bool ok =
        f[x] >= f[x0] && satisfies_quasi_maximum(space, f, x, C, A, alpha);
    ok ? ++pass : ++fail;
  }
  std::cout << fmt::format("quasimax trials: {} pass, {} fail\n", pass, fail);
  return fail == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Curvature prescription and conformal geometry lab for disks of "
      "revolution"};
  app.set_config("--config");
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand(
      "solve", "Solve the prescribed-curvature equation on a chart");
  std::string preset = "hyperbolic";
  double R = 4.0;
  int n = 128;
  std::string kappa_text = "1";
  double tol = 1e-10;
  std::string out_dir = ".";
  solve->add_option("--preset", preset, "chart preset")
      ->capture_default_str();
  solve->add_option("--R", R, "cap geodesic radius")->capture_default_str();
  solve->add_option("--n", n, "grid resolution (n x n)")
      ->capture_default_str();
  solve->add_option("--kappa", kappa_text,
                    "target curvature expression in theta, t, rho "
                    "(stored-positive: metric curvature is -kappa)")
      ->capture_default_str();
  solve->add_option("--tol", tol, "Newton residual tolerance")
      ->capture_default_str();
  solve->add_option("--out", out_dir, "output directory")
      ->capture_default_str();

  // modulus
  auto* modulus = app.add_subcommand(
      "modulus", "Conformal modulus of a revolution annulus");
  std::string profile_name = "hyperbolic";
  double mod_a = 1.0, mod_b = 2.0, dr_r = 4.0, collar = 1.0;
  modulus
      ->add_option("--profile", profile_name,
                   "profile preset: hyperbolic, euclidean, sphere-cap, dr")
      ->capture_default_str();
  modulus->add_option("--a", mod_a, "inner geodesic radius")
      ->capture_default_str();
  modulus->add_option("--b", mod_b, "outer geodesic radius")
      ->capture_default_str();
  modulus->add_option("--r", dr_r, "dr preset: cap radius")
      ->capture_default_str();
  modulus->add_option("--collar", collar, "dr preset: blend collar width")
      ->capture_default_str();

  // drlab
  auto* drlab = app.add_subcommand(
      "drlab", "Uniformization sweep over the cap-plus-cylinder family");
  std::string r_list = "3,4,5,6";
  std::string dr_out = "dr.csv";
  std::string plot_file;
  double dr_collar = 1.0;
  drlab->add_option("--r", r_list, "comma-separated cap radii")
      ->capture_default_str();
  drlab->add_option("--collar", dr_collar, "blend collar width")
      ->capture_default_str();
  drlab->add_option("--out", dr_out, "output CSV path ('-' for stdout)")
      ->capture_default_str();
  drlab->add_option("--plot", plot_file, "optional SVG plot path");

  // quasimax
  auto* quasimax = app.add_subcommand(
      "quasimax", "Randomized quasi-maximum trials with exhaustive checks");
  int trials = 1000, nx = 20, ny = 10;
  unsigned long long seed = 0;
  quasimax->add_option("--trials", trials, "trial count")
      ->capture_default_str();
  quasimax->add_option("--seed", seed, "RNG seed")->required();
  quasimax->add_option("--nx", nx, "grid graph width")->capture_default_str();
  quasimax->add_option("--ny", ny, "grid graph height")->capture_default_str();

  // selftest
  app.add_subcommand("selftest", "Run the full verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (solve->parsed())
      return cmd_solve(preset, R, n, kappa_text, tol, out_dir);
    if (modulus->parsed())
      return cmd_modulus(profile_name, mod_a, mod_b, dr_r, collar);
    if (drlab->parsed()) return cmd_drlab(r_list, dr_collar, dr_out, plot_file);
    if (quasimax->parsed()) return cmd_quasimax(trials, seed, nx, ny);
    // selftest
    auto results = run_acceptance(std::cout);
    return all_passed(results) ? 0 : 2;
  } catch (const ExprError& e) {
    std::cerr << "error in --kappa: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
