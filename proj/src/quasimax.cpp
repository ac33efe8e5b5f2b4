#include "courbure/quasimax.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace courbure {

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::vector<double> distances,
                                                 std::size_t n,
                                                 bool validate) {
  if (distances.size() != n * n)
    throw std::invalid_argument("FiniteMetricSpace: matrix size mismatch");
  if (validate) {
    auto at = [&](std::size_t i, std::size_t j) { return distances[i * n + j]; };
    for (std::size_t i = 0; i < n; ++i) {
      if (at(i, i) != 0.0)
        throw std::invalid_argument("FiniteMetricSpace: nonzero diagonal");
      for (std::size_t j = 0; j < i; ++j)
        if (std::abs(at(i, j) - at(j, i)) > 1e-9 || at(i, j) < 0.0)
          throw std::invalid_argument("FiniteMetricSpace: not symmetric");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (at(i, j) > at(i, k) + at(k, j) + 1e-9)
            throw std::invalid_argument(
                "FiniteMetricSpace: triangle inequality violated");
  }
  return FiniteMetricSpace(std::move(distances), n);
}

FiniteMetricSpace FiniteMetricSpace::grid_graph(int nx, int ny) {
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("grid_graph: dimensions must be positive");
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  std::vector<double> d(n * n, 0.0);
  // hop distance is |dx| + |dy| on a grid graph
  for (std::size_t a = 0; a < n; ++a) {
    const int ax = static_cast<int>(a) % nx;
    const int ay = static_cast<int>(a) / nx;
    for (std::size_t b = 0; b < n; ++b) {
      const int bx = static_cast<int>(b) % nx;
      const int by = static_cast<int>(b) / nx;
      d[a * n + b] = std::abs(ax - bx) + std::abs(ay - by);
    }
  }
  return FiniteMetricSpace(std::move(d), n);
}

namespace {

double ball_radius(double fx, double A, double alpha) {
  return fx == 0.0 ? std::numeric_limits<double>::infinity()
                   : A * std::pow(fx, -alpha);
}

}  // namespace

std::size_t quasi_maximum(const FiniteMetricSpace& space,
                          std::span<const double> f, std::size_t x0, double C,
                          double A, double alpha,
                          std::vector<std::size_t>* visited) {
  if (!(C > 1.0 && A > 0.0 && alpha > 0.0))
    throw std::invalid_argument("quasi_maximum: need C > 1, A > 0, alpha > 0");
  if (f.size() != space.size() || x0 >= space.size())
    throw std::invalid_argument("quasi_maximum: bad arguments");
  for (double v : f)
    if (!(v >= 0.0)) throw std::invalid_argument("quasi_maximum: f must be >= 0");

  std::size_t x = x0;
  if (visited) visited->assign(1, x);
  for (;;) {
    const double radius = ball_radius(f[x], A, alpha);
    std::size_t best = space.size();
    for (std::size_t y = 0; y < space.size(); ++y) {
      if (space.d(x, y) > radius || f[y] <= C * f[x]) continue;
      if (best == space.size() || f[y] > f[best]) best = y;
    }
    if (best == space.size()) return x;
    x = best;
    if (visited) visited->push_back(x);
  }
}

bool satisfies_quasi_maximum(const FiniteMetricSpace& space,
                             std::span<const double> f, std::size_t x,
                             double C, double A, double alpha) {
  const double radius = ball_radius(f[x], A, alpha);
  for (std::size_t y = 0; y < space.size(); ++y)
    if (space.d(x, y) <= radius && f[y] > C * f[x]) return false;
  return true;
}

}  // namespace courbure
