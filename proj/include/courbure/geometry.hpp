#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "courbure/grid.hpp"

namespace courbure {

// Profile f(rho) of a surface of revolution with metric
// d rho^2 + f(rho)^2 d theta^2, rho the geodesic distance from the
// center. Requires f(0) = 0, f'(0) = 1 and f > 0 on (0, rho_max).
class RevolutionProfile {
public:
  using Fn = std::function<double(double)>;

  RevolutionProfile(Fn f, Fn f_prime, Fn f_second, double rho_max,
                    std::string name);

  static RevolutionProfile hyperbolic();                  // f = sinh
  static RevolutionProfile euclidean(
      double rho_max = std::numeric_limits<double>::infinity());  // f = rho
  static RevolutionProfile sphere_cap(double rho_max);    // f = sin
  // Hyperbolic cap of radius r glued to a flat cylinder of length
  // r*sinh(r), blended over a collar of width `collar` inside the cap.
  static RevolutionProfile dr(double r, double collar = 1.0);

  double f(double rho) const { return f_(rho); }
  double f_prime(double rho) const { return fp_(rho); }
  double f_second(double rho) const { return fpp_(rho); }
  double rho_max() const { return rho_max_; }
  bool complete() const { return !std::isfinite(rho_max_); }
  const std::string& name() const { return name_; }

  // Gaussian curvature K(rho) = -f''(rho)/f(rho); the value at rho = 0
  // is the limit -f'''(0), taken by one-sided finite differences.
  double curvature(double rho) const;

private:
  Fn f_, fp_, fpp_;
  double rho_max_;
  std::string name_;
};

RevolutionProfile profile_by_name(const std::string& name, double dr_r = 4.0,
                                  double dr_collar = 1.0);

// t(rho) = integral_1^rho ds/f(s): the conformal height coordinate with
// base point rho = 1.
double conformal_coordinate(const RevolutionProfile& profile, double rho);

// Chart with metric lambda^2 (d theta^2 + dt^2).
struct ConformalChart {
  GridPtr grid;
  ScalarField lambda;
  bool has_center = false;
  double center_rho = 0.0;  // geodesic radius swallowed by the cap ring
  // geodesic radius rho per t-ring, for charts built from a profile
  std::vector<double> rho_rings;
};

// Sample a profile between geodesic radii [rho_in, rho_out] onto a
// conformal (theta, t) chart; lambda(theta, t(rho)) = f(rho).
ConformalChart chart_from_profile(const RevolutionProfile& profile,
                                  double rho_in, double rho_out, int n_theta,
                                  int n_t,
                                  Topology topology = Topology::Annulus);

// Hyperbolic cap of radius R; the returned kappa0 field is identically 1
// (stored-positive convention: curvature is -kappa0).
std::pair<ConformalChart, ScalarField> poincare_cap_chart(double R,
                                                          int n_theta,
                                                          int n_t);

// lambda^{-2} * flat Laplacian; interior rings only.
ScalarField laplace_beltrami(const ConformalChart& chart,
                             const ScalarField& field);

// Gaussian curvature of the chart metric, K = -lambda^{-2} Lap(log lambda),
// at interior rings (signed: negative on hyperbolic charts).
ScalarField gaussian_curvature_chart(const ConformalChart& chart);

// Stored-positive curvature of e^{2u} g from the background kappa0:
// kappa = e^{-2u} (kappa0 + Lap_g u) at interior rings.
ScalarField conformal_change_curvature(const ScalarField& kappa0,
                                       const ScalarField& u,
                                       const ConformalChart& chart);

struct NotConformallyHyperbolic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closed-form uniformization data of a rotationally symmetric disk.
struct UniformizationData {
  double T;    // total conformal length t(rho_max)
  double c0;   // center correction, lim_{rho->0} (t(rho) - log rho)
  double conformal_radius;  // e^{T - c0}

  double radius(double rho) const;  // |z|(rho) = e^{t(rho) - T}

  // kept so radius() can re-run the coordinate quadrature
  std::shared_ptr<const RevolutionProfile> profile;
};

UniformizationData uniformize_revolution(const RevolutionProfile& profile);

}  // namespace courbure
