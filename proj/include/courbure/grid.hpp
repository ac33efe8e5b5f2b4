#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace courbure {

enum class Topology {
  Annulus,    // periodic in theta, two boundary rings in t
  CappedDisk  // periodic in theta, innermost ring stands for the center point
};

// Periodic conformal lattice: n_theta nodes around the circle (spacing
// 2*pi/n_theta) times a uniform ladder of t-rings.
class Grid {
public:
  Grid(int n_theta, std::vector<double> t_values, Topology topology);

  int n_theta() const { return n_theta_; }
  int n_t() const { return static_cast<int>(t_values_.size()); }
  double h_theta() const { return h_theta_; }
  double h_t() const { return h_t_; }
  Topology topology() const { return topology_; }

  double theta(int i) const { return h_theta_ * wrap(i); }
  double t(int j) const { return t_values_[static_cast<std::size_t>(j)]; }
  double t_min() const { return t_values_.front(); }
  double t_max() const { return t_values_.back(); }

  std::size_t node_count() const {
    return static_cast<std::size_t>(n_theta_) * t_values_.size();
  }
  // Ring-major node index; the theta index wraps.
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * n_theta_ + wrap(i);
  }
  int wrap(int i) const {
    i %= n_theta_;
    return i < 0 ? i + n_theta_ : i;
  }
  bool is_boundary_ring(int j) const { return j == 0 || j == n_t() - 1; }

  bool same_as(const Grid& other) const { return this == &other; }

private:
  int n_theta_;
  std::vector<double> t_values_;
  Topology topology_;
  double h_theta_;
  double h_t_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int n_theta, double t_lo, double t_hi, int n_t,
                  Topology topology = Topology::Annulus);

// Node-indexed real values on a grid.
class ScalarField {
public:
  explicit ScalarField(GridPtr grid, double fill = 0.0);

  template <class F>
  static ScalarField from_function(GridPtr grid, F&& fn) {
    ScalarField out(grid);
    for (int j = 0; j < grid->n_t(); ++j)
      for (int i = 0; i < grid->n_theta(); ++i)
        out(i, j) = fn(grid->theta(i), grid->t(j));
    return out;
  }

  const Grid& grid() const { return *grid_; }
  GridPtr grid_ptr() const { return grid_; }

  double& operator()(int i, int j) { return values_[grid_->index(i, j)]; }
  double operator()(int i, int j) const { return values_[grid_->index(i, j)]; }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double min() const;
  double max() const;
  // Sup-norm over interior rings only (boundary rings excluded).
  double interior_sup() const;
  bool all_finite() const;

private:
  GridPtr grid_;
  std::vector<double> values_;
};

// Second-order 5-point Laplacian in the flat (theta, t) coordinates,
// periodic in theta. Boundary rings are left at zero; their value
// contract belongs to the caller's boundary condition.
ScalarField laplacian_flat(const ScalarField& field);

// Quadrature of field * weights over the chart: trapezoid in t (half
// cells at the end rings), plain sum around the periodic direction.
double integrate(const ScalarField& field, const ScalarField& weights);

struct HolderOptions {
  // Dijkstra sources are placed on a fixed fractional lattice so the
  // estimate is comparable across grid resolutions.
  int sources_theta = 12;
  int sources_t = 12;
  double locality_radius = 1.0;
};

// Discrete localized Hoelder seminorm: sup over node pairs within
// metric distance <= locality_radius of |f(x)-f(y)| / d(x,y)^alpha.
// Distances are graph distances on the 8-neighbor lattice with edge
// weight = mean conformal factor times coordinate edge length.
double holder_seminorm(const ScalarField& field, double alpha,
                       const ScalarField& conformal_factor,
                       const HolderOptions& opts = {});

}  // namespace courbure
