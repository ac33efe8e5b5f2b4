#pragma once

#include <span>
#include <vector>

#include "courbure/geometry.hpp"

namespace courbure {

// Quantitative record for one member of the cap-plus-cylinder family.
struct DrReport {
  double r;
  double modulus_cylinder;      // conformal modulus of the cylinder segment
  double inner_radius_Cr;       // image radius of the cylinder's inner rim
  double image_radius_Brm1;     // image radius of the geodesic circle rho=r-1
  double deriv_norm;            // |D Pi(0)| with Poincare source metric
  double T;
  double c0;
};

// Norm of the uniformization derivative at the center, measured with the
// Poincare metric 4|dz|^2/(1-|z|^2)^2 at the source and the surface
// metric at the center: e^{T - c0} / 2.
double derivative_at_center(const UniformizationData& unif);

DrReport dr_report(double r, double collar = 1.0);
std::vector<DrReport> dr_sweep(std::span<const double> r_values,
                               double collar = 1.0);

}  // namespace courbure
