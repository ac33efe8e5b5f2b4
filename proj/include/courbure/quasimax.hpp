#pragma once

#include <span>
#include <vector>

#include <cstddef>

namespace courbure {

// Finite metric space with a dense symmetric distance matrix.
class FiniteMetricSpace {
public:
  // Validates symmetry, zero diagonal and the triangle inequality
  // (within 1e-9) unless validate is false.
  static FiniteMetricSpace from_matrix(std::vector<double> distances,
                                       std::size_t n, bool validate = true);
  // Hop-count metric of the nx-by-ny grid graph; metric by construction.
  static FiniteMetricSpace grid_graph(int nx, int ny);

  std::size_t size() const { return n_; }
  double d(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

private:
  FiniteMetricSpace(std::vector<double> d, std::size_t n)
      : d_(std::move(d)), n_(n) {}
  std::vector<double> d_;
  std::size_t n_;
};

// Constructive quasi-maximum search: starting from x0, repeatedly jump to
// the best point y with d(x,y) <= A f(x)^{-alpha} and f(y) > C f(x)
// (ties broken by lowest index). The returned point x satisfies
// f(x) >= f(x0) and f(y) <= C f(x) for every y in its ball. When
// f(x) = 0 the ball is the whole space.
std::size_t quasi_maximum(const FiniteMetricSpace& space,
                          std::span<const double> f, std::size_t x0, double C,
                          double A, double alpha,
                          std::vector<std::size_t>* visited = nullptr);

// Exhaustive check of the quasi-maximum postcondition at x.
bool satisfies_quasi_maximum(const FiniteMetricSpace& space,
                             std::span<const double> f, std::size_t x,
                             double C, double A, double alpha);

}  // namespace courbure
