#include "courbure/modulus.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

namespace courbure {

double modulus_revolution(const RevolutionProfile& profile, double rho1,
                          double rho2) {
  if (!(rho1 >= 0.0 && rho1 <= rho2 && rho2 <= profile.rho_max()))
    throw std::invalid_argument("modulus_revolution: bad annulus bounds");
  if (rho1 == rho2) return 0.0;
  return conformal_coordinate(profile, rho2) -
         conformal_coordinate(profile, rho1);
}

namespace {

struct Entry {
  double dist;
  int node;
  bool operator>(const Entry& o) const {
    return dist > o.dist || (dist == o.dist && node > o.node);
  }
};

constexpr int kOff[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                            {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};

}  // namespace

double shortest_essential_loop(const ScalarField& density) {
  const Grid& g = density.grid();
  const int nth = g.n_theta();
  const int nt = g.n_t();
  // Cut plane: columns 0..nth, column nth is the twin of column 0.
  const int cols = nth + 1;
  const int nn = cols * nt;
  auto id = [cols](int i, int j) { return j * cols + i; };
  auto dens = [&](int i, int j) { return density(i % nth, j); };

  const double hth = g.h_theta();
  const double ht = g.h_t();
  const double diag = std::hypot(hth, ht);
  const double elen[8] = {hth, hth, ht, ht, diag, diag, diag, diag};

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(nn));
  for (int j0 = 0; j0 < nt; ++j0) {
    std::fill(dist.begin(), dist.end(),
              std::numeric_limits<double>::infinity());
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
    const int src = id(0, j0);
    const int dst = id(nth, j0);
    dist[static_cast<std::size_t>(src)] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
      const auto [d, node] = pq.top();
      pq.pop();
      if (d > dist[static_cast<std::size_t>(node)] || d >= best) continue;
      if (node == dst) break;
      const int i = node % cols;
      const int j = node / cols;
      for (int k = 0; k < 8; ++k) {
        const int ii = i + kOff[k][0];
        const int jj = j + kOff[k][1];
        if (ii < 0 || ii >= cols || jj < 0 || jj >= nt) continue;
        const double w = 0.5 * (dens(i, j) + dens(ii, jj)) * elen[k];
        const double nd = d + w;
        const std::size_t nb = static_cast<std::size_t>(id(ii, jj));
        if (nd < dist[nb] && nd < best) {
          dist[nb] = nd;
          pq.push({nd, id(ii, jj)});
        }
      }
    }
    best = std::min(best, dist[static_cast<std::size_t>(dst)]);
  }
  return best;
}

ExtremalLengthReport extremal_length_check(const ScalarField& density,
                                           double modulus) {
  const Grid& g = density.grid();
  for (double v : density.values())
    if (!(v > 0.0))
      throw std::invalid_argument("extremal_length_check: density must be > 0");
  ScalarField sq(density.grid_ptr());
  for (std::size_t k = 0; k < g.node_count(); ++k)
    sq[k] = density[k] * density[k];
  const double area = integrate(sq, ScalarField(density.grid_ptr(), 1.0));
  ScalarField normalized(density.grid_ptr());
  const double scale = 1.0 / std::sqrt(area);
  for (std::size_t k = 0; k < g.node_count(); ++k)
    normalized[k] = density[k] * scale;
  const double L = shortest_essential_loop(normalized);
  ExtremalLengthReport rep;
  rep.loop_length = L;
  rep.area = area;
  rep.lhs = L * L / (2.0 * std::numbers::pi);
  rep.bound = 1.0 / modulus;
  rep.slack = rep.bound - rep.lhs;
  return rep;
}

bool monotonicity_check(const RevolutionProfile& profile, double a1, double b1,
                        double a2, double b2) {
  if (!(a2 <= a1 && b1 <= b2))
    throw std::invalid_argument("monotonicity_check: intervals not nested");
  const double m1 = modulus_revolution(profile, a1, b1);
  const double m2 = modulus_revolution(profile, a2, b2);
  return m1 <= m2 + 1e-12;
}

}  // namespace courbure
