#include "courbure/geometry.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

namespace courbure {

namespace {

using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;

double quad(const std::function<double(double)>& fn, double a, double b) {
  if (a == b) return 0.0;
  return Quad::integrate(fn, a, b, 12, 1e-12);
}

// C^2 smoothstep: w(0)=w'(0)=w''(0)=0, w(1)=1, w'(1)=w''(1)=0.
double smooth5(double x) { return x * x * x * (10.0 + x * (-15.0 + 6.0 * x)); }
double smooth5p(double x) { return 30.0 * x * x * (1.0 - x) * (1.0 - x); }
double smooth5pp(double x) { return 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x); }

}  // namespace

RevolutionProfile::RevolutionProfile(Fn f, Fn f_prime, Fn f_second,
                                     double rho_max, std::string name)
    : f_(std::move(f)),
      fp_(std::move(f_prime)),
      fpp_(std::move(f_second)),
      rho_max_(rho_max),
      name_(std::move(name)) {
  if (!(rho_max_ > 0.0))
    throw std::invalid_argument("RevolutionProfile: rho_max must be positive");
  if (std::abs(f_(0.0)) > 1e-12 || std::abs(fp_(0.0) - 1.0) > 1e-12)
    throw std::invalid_argument(
        "RevolutionProfile: smooth cap requires f(0)=0, f'(0)=1");
}

RevolutionProfile RevolutionProfile::hyperbolic() {
  return RevolutionProfile([](double s) { return std::sinh(s); },
                           [](double s) { return std::cosh(s); },
                           [](double s) { return std::sinh(s); },
                           std::numeric_limits<double>::infinity(),
                           "hyperbolic");
}

RevolutionProfile RevolutionProfile::euclidean(double rho_max) {
  return RevolutionProfile([](double s) { return s; },
                           [](double) { return 1.0; },
                           [](double) { return 0.0; }, rho_max, "euclidean");
}

RevolutionProfile RevolutionProfile::sphere_cap(double rho_max) {
  if (!(rho_max > 0.0 && rho_max < std::numbers::pi))
    throw std::invalid_argument("sphere_cap: need 0 < rho_max < pi");
  return RevolutionProfile([](double s) { return std::sin(s); },
                           [](double s) { return std::cos(s); },
                           [](double s) { return -std::sin(s); }, rho_max,
                           "sphere-cap");
}

RevolutionProfile RevolutionProfile::dr(double r, double collar) {
  if (r < 2.0) throw std::invalid_argument("dr: need r >= 2");
  if (!(collar > 0.0 && collar <= 1.0))
    throw std::invalid_argument("dr: need 0 < collar <= 1");
  const double s0 = r - collar;        // blend start
  const double sr = std::sinh(r);      // cylinder radius
  const double rho_max = r + r * sr;   // cap + cylinder of length r*sinh r
  auto f = [=](double s) {
    if (s <= s0) return std::sinh(s);
    if (s >= r) return sr;
    const double x = (s - s0) / collar;
    const double w = smooth5(x);
    return (1.0 - w) * std::sinh(s) + w * sr;
  };
  auto fp = [=](double s) {
    if (s <= s0) return std::cosh(s);
    if (s >= r) return 0.0;
    const double x = (s - s0) / collar;
    const double w = smooth5(x);
    const double wp = smooth5p(x) / collar;
    return (1.0 - w) * std::cosh(s) + wp * (sr - std::sinh(s));
  };
  auto fpp = [=](double s) {
    if (s <= s0) return std::sinh(s);
    if (s >= r) return 0.0;
    const double x = (s - s0) / collar;
    const double w = smooth5(x);
    const double wp = smooth5p(x) / collar;
    const double wpp = smooth5pp(x) / (collar * collar);
    return (1.0 - w) * std::sinh(s) - 2.0 * wp * std::cosh(s) +
           wpp * (sr - std::sinh(s));
  };
  return RevolutionProfile(f, fp, fpp, rho_max, "dr");
}

double RevolutionProfile::curvature(double rho) const {
  if (rho < 0.0 || rho >= rho_max_)
    throw std::invalid_argument("curvature: rho outside profile domain");
  if (rho == 0.0) {
    // limit -f'''(0) via one-sided differences on f''/rho, Richardson step
    const double h = 1e-3;
    const double d1 = fpp_(h) / h;
    const double d2 = fpp_(h / 2.0) / (h / 2.0);
    return -(4.0 * d2 - d1) / 3.0;
  }
  return -fpp_(rho) / f_(rho);
}

RevolutionProfile profile_by_name(const std::string& name, double dr_r,
                                  double dr_collar) {
  if (name == "hyperbolic") return RevolutionProfile::hyperbolic();
  if (name == "euclidean") return RevolutionProfile::euclidean();
  if (name == "sphere-cap")
    return RevolutionProfile::sphere_cap(0.5 * std::numbers::pi);
  if (name == "dr") return RevolutionProfile::dr(dr_r, dr_collar);
  throw std::invalid_argument("unknown profile preset: " + name);
}

double conformal_coordinate(const RevolutionProfile& profile, double rho) {
  if (!(rho > 0.0 && rho <= profile.rho_max()))
    throw std::invalid_argument("conformal_coordinate: rho outside domain");
  if (rho == 1.0) return 0.0;
  if (rho < 1.0) {
    // regularized form: the integrand 1/f - 1/s extends smoothly to 0
    auto reg = [&](double s) { return 1.0 / profile.f(s) - 1.0 / s; };
    return std::log(rho) + quad(reg, 1.0, rho);
  }
  auto inv = [&](double s) { return 1.0 / profile.f(s); };
  return quad(inv, 1.0, rho);
}

ConformalChart chart_from_profile(const RevolutionProfile& profile,
                                  double rho_in, double rho_out, int n_theta,
                                  int n_t, Topology topology) {
  if (!(rho_in > 0.0 && rho_in < rho_out && rho_out <= profile.rho_max()))
    throw std::invalid_argument("chart_from_profile: bad rho range");
  const double t_lo = conformal_coordinate(profile, rho_in);
  const double t_hi = conformal_coordinate(profile, rho_out);
  auto grid = make_grid(n_theta, t_lo, t_hi, n_t, topology);

  ConformalChart chart{grid, ScalarField(grid)};
  if (topology == Topology::CappedDisk) {
    chart.has_center = true;
    chart.center_rho = rho_in;
  }
  // Invert t(rho) ring by ring; dt/drho = 1/f so Newton converges fast,
  // with a bisection bracket as safeguard.
  double lo = rho_in, hi = rho_out;
  for (int j = 0; j < n_t; ++j) {
    const double target = grid->t(j);
    double rho = std::clamp(
        rho_in + (rho_out - rho_in) * j / (n_t - 1.0), lo, hi);
    double a = lo, b = hi;
    for (int it = 0; it < 100; ++it) {
      const double err = conformal_coordinate(profile, rho) - target;
      if (std::abs(err) < 1e-12) break;
      if (err > 0.0) b = rho; else a = rho;
      double next = rho - err * profile.f(rho);
      if (!(next > a && next < b)) next = 0.5 * (a + b);
      rho = next;
    }
    lo = rho;  // rings are ordered, reuse as lower bracket
    chart.rho_rings.push_back(rho);
    const double lam = profile.f(rho);
    for (int i = 0; i < n_theta; ++i) chart.lambda(i, j) = lam;
  }
  return chart;
}

std::pair<ConformalChart, ScalarField> poincare_cap_chart(double R,
                                                          int n_theta,
                                                          int n_t) {
  if (!(R > 0.0)) throw std::invalid_argument("poincare_cap_chart: R > 0");
  auto profile = RevolutionProfile::hyperbolic();
  // enclosed geodesic radius R/200 < 0.01 * R
  ConformalChart chart = chart_from_profile(profile, R / 200.0, R, n_theta,
                                            n_t, Topology::CappedDisk);
  ScalarField kappa0(chart.grid, 1.0);
  return {std::move(chart), std::move(kappa0)};
}

ScalarField laplace_beltrami(const ConformalChart& chart,
                             const ScalarField& field) {
  if (!chart.grid->same_as(field.grid()))
    throw std::invalid_argument("laplace_beltrami: grid mismatch");
  ScalarField out = laplacian_flat(field);
  const Grid& g = *chart.grid;
  for (int j = 1; j < g.n_t() - 1; ++j)
    for (int i = 0; i < g.n_theta(); ++i) {
      const double lam = chart.lambda(i, j);
      out(i, j) /= lam * lam;
    }
  return out;
}

ScalarField gaussian_curvature_chart(const ConformalChart& chart) {
  const Grid& g = *chart.grid;
  ScalarField loglam(chart.grid);
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    if (!(chart.lambda[k] > 0.0))
      throw std::invalid_argument(
          "gaussian_curvature_chart: conformal factor must be positive");
    loglam[k] = std::log(chart.lambda[k]);
  }
  ScalarField out = laplacian_flat(loglam);
  for (int j = 1; j < g.n_t() - 1; ++j)
    for (int i = 0; i < g.n_theta(); ++i) {
      const double lam = chart.lambda(i, j);
      out(i, j) = -out(i, j) / (lam * lam);
    }
  return out;
}

ScalarField conformal_change_curvature(const ScalarField& kappa0,
                                       const ScalarField& u,
                                       const ConformalChart& chart) {
  const Grid& g = *chart.grid;
  if (!g.same_as(kappa0.grid()) || !g.same_as(u.grid()))
    throw std::invalid_argument("conformal_change_curvature: grid mismatch");
  ScalarField lap = laplace_beltrami(chart, u);
  ScalarField out(chart.grid);
  for (int j = 0; j < g.n_t(); ++j)
    for (int i = 0; i < g.n_theta(); ++i)
      out(i, j) = std::exp(-2.0 * u(i, j)) * (kappa0(i, j) + lap(i, j));
  return out;
}

double UniformizationData::radius(double rho) const {
  return std::exp(conformal_coordinate(*profile, rho) - T);
}

UniformizationData uniformize_revolution(const RevolutionProfile& profile) {
  double T;
  if (profile.complete()) {
    // integrate 1/f over doubling windows; increments must vanish
    T = conformal_coordinate(profile, 2.0);
    double a = 2.0, prev_inc = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int k = 0; k < 60; ++k) {
      auto inv = [&](double s) { return 1.0 / profile.f(s); };
      const double inc = quad(inv, a, 2.0 * a);
      T += inc;
      if (inc < 1e-13) {
        converged = true;
        break;
      }
      if (inc > 0.9 * prev_inc && a > 1e4) break;  // log-type divergence
      prev_inc = inc;
      a *= 2.0;
    }
    if (!converged)
      throw NotConformallyHyperbolic(
          "uniformize_revolution: conformal length diverges (profile '" +
          profile.name() + "' is not conformally hyperbolic)");
  } else {
    T = conformal_coordinate(profile, profile.rho_max());
  }

  // c0 = lim_{rho->0} (t(rho) - log rho), Richardson on rho = 2^-k
  double c0 = 0.0, prev = std::numeric_limits<double>::quiet_NaN();
  double a_prev = conformal_coordinate(profile, 0.5) - std::log(0.5);
  for (int k = 2; k <= 20; ++k) {
    const double rho = std::ldexp(1.0, -k);
    const double a_k = conformal_coordinate(profile, rho) - std::log(rho);
    const double rich = (4.0 * a_k - a_prev) / 3.0;
    if (std::isfinite(prev) && std::abs(rich - prev) < 1e-9) {
      c0 = rich;
      break;
    }
    prev = rich;
    c0 = rich;
    a_prev = a_k;
  }

  UniformizationData out;
  out.T = T;
  out.c0 = c0;
  out.conformal_radius = std::exp(T - c0);
  out.profile = std::make_shared<RevolutionProfile>(profile);
  return out;
}

}  // namespace courbure
