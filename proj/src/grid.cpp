#include "courbure/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace courbure {

Grid::Grid(int n_theta, std::vector<double> t_values, Topology topology)
    : n_theta_(n_theta), t_values_(std::move(t_values)), topology_(topology) {
  if (n_theta_ < 8) throw std::invalid_argument("Grid: n_theta must be >= 8");
  if (t_values_.size() < 2)
    throw std::invalid_argument("Grid: need at least 2 t-rings");
  h_theta_ = 2.0 * std::numbers::pi / n_theta_;
  h_t_ = (t_values_.back() - t_values_.front()) /
         static_cast<double>(t_values_.size() - 1);
  if (!(h_t_ > 0.0))
    throw std::invalid_argument("Grid: t_values must be strictly increasing");
  for (std::size_t j = 1; j < t_values_.size(); ++j) {
    const double dt = t_values_[j] - t_values_[j - 1];
    if (std::abs(dt - h_t_) > 1e-12 * std::max(1.0, std::abs(h_t_)))
      throw std::invalid_argument("Grid: t spacing must be uniform");
  }
}

GridPtr make_grid(int n_theta, double t_lo, double t_hi, int n_t,
                  Topology topology) {
  if (n_t < 2) throw std::invalid_argument("make_grid: n_t must be >= 2");
  std::vector<double> ts(static_cast<std::size_t>(n_t));
  for (int j = 0; j < n_t; ++j)
    ts[static_cast<std::size_t>(j)] = t_lo + (t_hi - t_lo) * j / (n_t - 1);
  return std::make_shared<Grid>(n_theta, std::move(ts), topology);
}

ScalarField::ScalarField(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_->node_count(), fill) {}

double ScalarField::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double ScalarField::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

double ScalarField::interior_sup() const {
  double s = 0.0;
  for (int j = 1; j < grid_->n_t() - 1; ++j)
    for (int i = 0; i < grid_->n_theta(); ++i)
      s = std::max(s, std::abs((*this)(i, j)));
  return s;
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

ScalarField laplacian_flat(const ScalarField& field) {
  const Grid& g = field.grid();
  if (g.n_t() < 3)
    throw std::invalid_argument("laplacian_flat: need at least 3 t-rings");
  ScalarField out(field.grid_ptr());
  const double ith2 = 1.0 / (g.h_theta() * g.h_theta());
  const double it2 = 1.0 / (g.h_t() * g.h_t());
  for (int j = 1; j < g.n_t() - 1; ++j) {
    for (int i = 0; i < g.n_theta(); ++i) {
      const double c = field(i, j);
      out(i, j) = (field(i + 1, j) + field(i - 1, j) - 2.0 * c) * ith2 +
                  (field(i, j + 1) + field(i, j - 1) - 2.0 * c) * it2;
    }
  }
  return out;
}

double integrate(const ScalarField& field, const ScalarField& weights) {
  const Grid& g = field.grid();
  if (!g.same_as(weights.grid()))
    throw std::invalid_argument("integrate: fields live on different grids");
  double sum = 0.0;
  for (int j = 0; j < g.n_t(); ++j) {
    const double wt = g.is_boundary_ring(j) ? 0.5 : 1.0;
    double ring = 0.0;
    for (int i = 0; i < g.n_theta(); ++i) ring += field(i, j) * weights(i, j);
    sum += wt * ring;
  }
  return sum * g.h_theta() * g.h_t();
}

namespace {

struct QueueEntry {
  double dist;
  std::size_t node;
  bool operator>(const QueueEntry& o) const {
    return dist > o.dist || (dist == o.dist && node > o.node);
  }
};

// 8-neighbor offsets in (theta, t) index space.
constexpr int kOff[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                            {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};

}  // namespace

double holder_seminorm(const ScalarField& field, double alpha,
                       const ScalarField& conformal_factor,
                       const HolderOptions& opts) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("holder_seminorm: alpha must be in (0,1]");
  const Grid& g = field.grid();
  if (!g.same_as(conformal_factor.grid()))
    throw std::invalid_argument("holder_seminorm: grid mismatch");

  const int nth = g.n_theta();
  const int nt = g.n_t();
  const double radius = opts.locality_radius;

  // Source nodes at fixed fractional chart positions.
  std::vector<std::size_t> sources;
  const int st = std::min(opts.sources_theta, nth);
  const int sj = std::min(opts.sources_t, nt);
  for (int b = 0; b < sj; ++b) {
    const int j = static_cast<int>((b + 0.5) * nt / sj);
    for (int a = 0; a < st; ++a) {
      const int i = static_cast<int>((a + 0.5) * nth / st);
      sources.push_back(g.index(i, j));
    }
  }

  const double hth = g.h_theta();
  const double ht = g.h_t();
  const double diag = std::hypot(hth, ht);
  const double edge_len[8] = {hth, hth, ht, ht, diag, diag, diag, diag};

  std::vector<double> dist(g.node_count());
  double best = 0.0;
  for (std::size_t src : sources) {
    std::fill(dist.begin(), dist.end(),
              std::numeric_limits<double>::infinity());
    std::priority_queue<QueueEntry, std::vector<QueueEntry>,
                        std::greater<QueueEntry>>
        pq;
    dist[src] = 0.0;
    pq.push({0.0, src});
    const double fsrc = field[src];
    while (!pq.empty()) {
      const auto [d, node] = pq.top();
      pq.pop();
      if (d > dist[node]) continue;
      if (node != src && d > 0.0)
        best = std::max(best, std::abs(field[node] - fsrc) /
                                  std::pow(d, alpha));
      const int i = static_cast<int>(node % static_cast<std::size_t>(nth));
      const int j = static_cast<int>(node / static_cast<std::size_t>(nth));
      for (int k = 0; k < 8; ++k) {
        const int jj = j + kOff[k][1];
        if (jj < 0 || jj >= nt) continue;
        const std::size_t nb = g.index(i + kOff[k][0], jj);
        const double w =
            0.5 * (conformal_factor[node] + conformal_factor[nb]) * edge_len[k];
        const double nd = d + w;
        if (nd <= radius && nd < dist[nb]) {
          dist[nb] = nd;
          pq.push({nd, nb});
        }
      }
    }
  }
  return best;
}

}  // namespace courbure
