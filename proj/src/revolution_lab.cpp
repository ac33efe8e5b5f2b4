#include "courbure/revolution_lab.hpp"

#include <cmath>

#include "courbure/modulus.hpp"

namespace courbure {

double derivative_at_center(const UniformizationData& unif) {
  return 0.5 * std::exp(unif.T - unif.c0);
}

DrReport dr_report(double r, double collar) {
  RevolutionProfile profile = RevolutionProfile::dr(r, collar);
  UniformizationData unif = uniformize_revolution(profile);
  DrReport rep;
  rep.r = r;
  rep.T = unif.T;
  rep.c0 = unif.c0;
  // cylinder segment is [r, r + r sinh r] in arclength
  rep.modulus_cylinder =
      modulus_revolution(profile, r, profile.rho_max());
  rep.inner_radius_Cr = unif.radius(r);
  rep.image_radius_Brm1 = unif.radius(r - 1.0);
  rep.deriv_norm = derivative_at_center(unif);
  return rep;
}

std::vector<DrReport> dr_sweep(std::span<const double> r_values,
                               double collar) {
  std::vector<DrReport> out;
  out.reserve(r_values.size());
  for (double r : r_values) out.push_back(dr_report(r, collar));
  return out;
}

}  // namespace courbure
