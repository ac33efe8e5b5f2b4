#pragma once

#include "courbure/geometry.hpp"
#include "courbure/grid.hpp"

namespace courbure {

// Conformal modulus of the revolution annulus rho in [rho1, rho2]:
// M = integral of d rho / f(rho). Normalization: the flat cylinder of
// circumference 2*pi and height M has modulus M.
double modulus_revolution(const RevolutionProfile& profile, double rho1,
                          double rho2);

// Length of the shortest theta-winding loop for the conformal metric
// density^2 (d theta^2 + dt^2), via a cut along theta = 0 and a
// deterministic shortest-path search on the 8-neighbor grid graph.
double shortest_essential_loop(const ScalarField& density);

struct ExtremalLengthReport {
  double loop_length;  // L after area-1 normalization
  double area;         // area of the input density (before normalization)
  double lhs;          // L^2 / (2*pi)
  double bound;        // 1 / M
  double slack;        // bound - lhs
};

// Normalizes the density to unit area and checks the extremal-length
// inequality L^2 / (2*pi) <= 1/M for an annulus grid of modulus M.
ExtremalLengthReport extremal_length_check(const ScalarField& density,
                                           double modulus);

// Modulus monotonicity for nested revolution annuli [a1,b1] <= [a2,b2].
bool monotonicity_check(const RevolutionProfile& profile, double a1, double b1,
                        double a2, double b2);

}  // namespace courbure
