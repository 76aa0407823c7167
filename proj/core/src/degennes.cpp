#include "dgl/degennes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dgl/error.hpp"
#include "dgl/halfline.hpp"
#include "dgl/hermite.hpp"
#include "dgl/minimize.hpp"
#include "dgl/quadrature.hpp"
#include "dgl/roots.hpp"

namespace dgl {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kSeedNodes = 1201;

void check_args(int j, double xi) {
  if (j < 1 || j > 3) throw std::invalid_argument("eigenvalue index must be 1, 2 or 3");
  if (!(std::fabs(xi) <= 10.0)) throw std::invalid_argument("|xi| must not exceed 10");
}

double seed_value(int j, double xi) {
  const GridSpec g = GridSpec::around(xi, kSeedNodes);
  return neumann_eigenvalues(g, shifted_harmonic(g, xi), j).back();
}

// root of the characteristic function near the finite-difference seed
double characteristic_root(int j, double xi) {
  const double seed = seed_value(j, xi);
  const ScalarFn f = [xi](double m) { return characteristic_function(m, xi); };
  const RootBracket b = make_bracket(f, seed - 0.05, seed + 0.05);
  if (!b.valid())
    throw Error(Errc::bracket_failure, "characteristic root for j=" + std::to_string(j) +
                                           " not isolated near " + std::to_string(seed));
  return find_root(f, b, 1e-14);
}

struct Sampled {
  std::vector<double> u;
  double scale = 0.0;  // u = scale * exp(-s^2/2) H_nu(s), s = t - xi
};

Sampled characteristic_samples(double mu, double xi, const GridSpec& grid) {
  const double nu = 0.5 * (mu - 1.0);
  std::vector<double> s = grid.nodes();
  for (auto& v : s) v -= xi;
  Sampled out{hermite_h_weighted(nu, s), 0.0};
  std::vector<double> sq(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) sq[i] = out.u[i] * out.u[i];
  const double norm = std::sqrt(quad_simpson(grid, sq));
  out.scale = (out.u[0] < 0.0 ? -1.0 : 1.0) / norm;
  for (auto& v : out.u) v *= out.scale;
  return out;
}

double characteristic_residual(double mu, double xi) {
  const double nu = 0.5 * (mu - 1.0);
  const double a = (mu - 1.0) * hermite_h_weighted(nu - 1.0, -xi);
  const double b = xi * hermite_h_weighted(nu, -xi);
  const double scale = std::fabs(a) + std::fabs(b);
  return scale > 0.0 ? std::fabs(a + b) / scale : 0.0;
}

std::vector<double> normalize_simpson(const GridSpec& grid, std::vector<double> u) {
  std::vector<double> sq(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) sq[i] = u[i] * u[i];
  const double c = (u[0] < 0.0 ? -1.0 : 1.0) / std::sqrt(quad_simpson(grid, sq));
  for (auto& v : u) v *= c;
  return u;
}

double simpson_moment(const GridSpec& grid, const std::vector<double>& u, double xi, int power) {
  std::vector<double> w(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i)
    w[i] = std::pow(grid.node(i) - xi, power) * u[i] * u[i];
  return quad_simpson(grid, w);
}

}  // namespace

double characteristic_function(double mu, double xi) {
  const double nu = 0.5 * (mu - 1.0);
  return (mu - 1.0) * hermite_h_weighted(nu - 1.0, -xi) + xi * hermite_h_weighted(nu, -xi);
}

std::vector<double> mu_fd(double xi, int k, const GridSpec& grid) {
  const GridSpec fine = grid.refined();
  const auto coarse_vals = neumann_eigenvalues(grid, shifted_harmonic(grid, xi), k);
  const auto fine_vals = neumann_eigenvalues(fine, shifted_harmonic(fine, xi), k);
  std::vector<double> out(k);
  for (int i = 0; i < k; ++i) out[i] = richardson(coarse_vals[i], fine_vals[i]);
  return out;
}

double mu_value(int j, double xi, Method method) {
  check_args(j, xi);
  if (method == Method::characteristic) return characteristic_root(j, xi);
  return mu_fd(xi, j, GridSpec::around(xi)).back();
}

EigenResult mu(int j, double xi, Method method) { return mu(j, xi, method, GridSpec::around(xi)); }

EigenResult mu(int j, double xi, Method method, const GridSpec& grid) {
  check_args(j, xi);
  EigenResult r;
  r.j = j;
  r.xi = xi;
  r.grid = grid;
  r.method = method;
  if (method == Method::characteristic) {
    r.mu = characteristic_root(j, xi);
    r.u = characteristic_samples(r.mu, xi, grid).u;
    r.residual = characteristic_residual(r.mu, xi);
    return r;
  }
  const GridSpec fine = grid.refined();
  const GridEigen c = neumann_eigen(grid, shifted_harmonic(grid, xi), j);
  const GridEigen f = neumann_eigen(fine, shifted_harmonic(fine, xi), j);
  r.mu = richardson(c.values.back(), f.values.back());
  std::vector<double> u(grid.n);
  const auto& uc = c.vectors.back();
  const auto& uf = f.vectors.back();
  for (std::size_t i = 0; i < grid.n; ++i) u[i] = richardson(uc[i], uf[2 * i]);
  r.u = normalize_simpson(grid, std::move(u));
  r.residual = std::max(c.residuals.back(), f.residuals.back());
  return r;
}

double mu_prime(int j, double xi) {
  const EigenResult r = mu(j, xi);
  return (xi * xi - r.mu) * r.u[0] * r.u[0];
}

double mu_prime_feynman(int j, double xi) {
  const EigenResult r = mu(j, xi);
  return -2.0 * simpson_moment(r.grid, r.u, xi, 1);
}

double dirichlet_mu(int j, double xi) {
  check_args(j, xi);
  const GridSpec g = GridSpec::around(xi);
  const GridSpec fine = g.refined();
  const double c = dirichlet_eigenvalues(g, shifted_harmonic(g, xi), j).back();
  const double f = dirichlet_eigenvalues(fine, shifted_harmonic(fine, xi), j).back();
  return richardson(c, f);
}

UniversalConstants compute_universal_constants() {
  UniversalConstants c;
  auto stationary = [](int j) {
    const ScalarFn g = [j](double xi) { return mu_value(j, xi) - xi * xi; };
    return find_root(g, make_bracket(g, 0.1, std::sqrt(2.0 * j - 1.0)), 1e-13);
  };
  auto hat = [](int j) {
    const double level = 2.0 * j - 1.0;
    const ScalarFn g = [j, level](double xi) { return mu_value(j, xi) - level; };
    return find_root(g, make_bracket(g, 0.0, std::sqrt(2.0 * j - 1.0)), 1e-13);
  };
  c.xi0 = stationary(1);
  c.theta0 = mu_value(1, c.xi0);
  c.xi0_2 = stationary(2);
  c.mu2_min = mu_value(2, c.xi0_2);
  c.xi0_3 = stationary(3);
  c.mu3_min = mu_value(3, c.xi0_3);
  c.xi_hat_2 = hat(2);
  c.xi_hat_3 = hat(3);
  const EigenResult u1 = mu(1, c.xi0);
  std::vector<double> q(u1.grid.n);
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = std::pow(u1.u[i], 4);
  c.u1_l4_fourth = quad_simpson(u1.grid, q);
  return c;
}

const UniversalConstants& universal_constants() {
  static const UniversalConstants cached = compute_universal_constants();
  return cached;
}

std::vector<CertificateReport> analytic_lower_bounds(const UniversalConstants& c) {
  std::vector<CertificateReport> out;
  const double s17 = std::sqrt(17.0);

  const double xi2_bound = std::pow(2.0, 1.75) / std::pow(3.0, 0.75);
  const double mu2_bound = std::pow(2.0, 3.5) / std::pow(3.0, 1.5);
  const double xi3_bound =
      std::sqrt(5.0) * (2.0 + std::sqrt(26.0 - 6.0 * s17)) / std::pow(30.0 - 6.0 * s17, 0.75);
  const double mu3_bound = 5.0 * std::pow(2.0 + std::sqrt(26.0 - 6.0 * s17), 2) /
                           std::pow(30.0 - 6.0 * s17, 1.5);
  out.push_back(make_report("xi0-2-closed-form", {{"j", 2}}, c.xi0_2 - xi2_bound));
  out.push_back(make_report("mu2-min-closed-form", {{"j", 2}}, c.mu2_min - mu2_bound));
  out.push_back(make_report("xi0-3-closed-form", {{"j", 3}}, c.xi0_3 - xi3_bound));
  out.push_back(make_report("mu3-min-closed-form", {{"j", 3}}, c.mu3_min - mu3_bound));

  // the closed forms are the optima of the gamma families
  const auto xi2_family = [](double g) {
    return (1.0 + std::sqrt(2.0 * g)) / std::pow(1.0 + g, 0.75);
  };
  const auto xi3_family = [](double g) {
    return std::sqrt(2.5) * (1.0 + std::sqrt(g)) / std::pow(1.0 + g, 0.75);
  };
  const MinimumResult opt2 = minimize_1d([&](double g) { return -xi2_family(g); }, 0.01, 4.0, 1e-10);
  const MinimumResult opt3 = minimize_1d([&](double g) { return -xi3_family(g); }, 0.01, 4.0, 1e-10);
  out.push_back(make_equality("xi0-2-gamma-optimum", {{"gamma", opt2.x}}, opt2.x, 0.5, 1e-6));
  out.push_back(make_equality("xi0-3-gamma-optimum", {{"gamma", opt3.x}}, opt3.x,
                              0.5 * (13.0 - 3.0 * s17), 1e-6));
  out.push_back(make_equality("xi0-2-closed-form-value", {{"j", 2}}, -opt2.fx, xi2_bound, 1e-9));
  out.push_back(make_equality("xi0-3-closed-form-value", {{"j", 3}}, -opt3.fx, xi3_bound, 1e-9));

  const double gammas[] = {0.05, 0.1, 0.2, 0.5 * (13.0 - 3.0 * s17), 0.5, 1.0, 2.0, 4.0, 8.0};
  for (double g : gammas) {
    out.push_back(make_report("xi0-2-gamma-family", {{"gamma", g}}, c.xi0_2 - xi2_family(g)));
    out.push_back(make_report("xi0-3-gamma-family", {{"gamma", g}}, c.xi0_3 - xi3_family(g)));
    const double q = std::pow(1.0 + g, -0.25);
    const double comp2 = std::sqrt(1.0 + g) * c.xi0_2 * c.xi0_2 +
                         (1.0 + 1.0 / g) * std::pow(c.xi_hat_2 - c.xi0_2 * q, 2) - 3.0;
    const double comp3 = std::sqrt(1.0 + g) * c.xi0_3 * c.xi0_3 +
                         (1.0 + 1.0 / g) * std::pow(c.xi_hat_3 - c.xi0_3 * q, 2) - 5.0;
    out.push_back(make_report("level-comparison-2", {{"gamma", g}}, comp2));
    out.push_back(make_report("level-comparison-3", {{"gamma", g}}, comp3));
  }
  for (double xi : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0}) {
    const double m1 = mu_value(1, xi);
    for (double g : {0.25, 1.0, 4.0}) {
      out.push_back(make_report("mu1-oscillator-upper", {{"xi", xi}, {"gamma", g}},
                                std::sqrt(1.0 + g) + (1.0 + 1.0 / g) * xi * xi - m1));
    }
  }

  out.push_back(make_report("theta0-above-half", {}, c.theta0 - 0.5));
  out.push_back(make_report("theta0-below-one", {}, 1.0 - c.theta0));
  out.push_back(make_equality("theta0-equals-xi0-squared", {}, c.theta0, c.xi0 * c.xi0, 1e-8));
  out.push_back(make_report("xi0-2-below-sqrt3", {}, std::sqrt(3.0) - c.xi0_2));
  out.push_back(make_report("xi0-3-below-sqrt5", {}, std::sqrt(5.0) - c.xi0_3));
  out.push_back(make_equality("xi-hat-2", {}, c.xi_hat_2, 1.0, 1e-8));
  out.push_back(make_equality("xi-hat-3", {}, c.xi_hat_3, std::sqrt(2.5), 1e-8));

  for (double xi : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    const EigenResult r = mu(1, xi);
    const double d = (xi * xi - r.mu) * r.u[0] * r.u[0];
    out.push_back(make_report("ground-state-trial", {{"xi", xi}}, r.mu - xi * d + xi * xi - 1.0));
  }
  for (double xi : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    for (int j : {1, 2}) {
      out.push_back(make_report("neumann-below-dirichlet", {{"j", j}, {"xi", xi}},
                                dirichlet_mu(j, xi) - mu_value(j, xi)));
    }
  }
  for (int k = 0; k <= 12; ++k) {
    const double xi = 0.25 * k;
    out.push_back(make_report("mu2-above-one", {{"xi", xi}}, mu_value(2, xi) - 1.0));
  }

  std::string failed;
  for (const auto& r : out)
    if (!r.pass) failed += " " + r.name;
  if (!failed.empty()) throw Error(Errc::bound_violated, "failed:" + failed);
  return out;
}

std::vector<CertificateReport> analytic_lower_bounds() {
  return analytic_lower_bounds(universal_constants());
}

VirialCheck virial_check(int j, double xi) {
  check_args(j, xi);
  const GridSpec grid = GridSpec::around(xi);
  const double m = characteristic_root(j, xi);
  const double nu = 0.5 * (m - 1.0);
  const Sampled smp = characteristic_samples(m, xi, grid);
  std::vector<double> s = grid.nodes();
  for (auto& v : s) v -= xi;
  const std::vector<double> lower = hermite_h_weighted(nu - 1.0, s);
  std::vector<double> du2(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double du = -s[i] * smp.u[i] + smp.scale * 2.0 * nu * lower[i];
    du2[i] = du * du;
  }
  VirialCheck v;
  v.kinetic = quad_simpson(grid, du2);
  v.potential = simpson_moment(grid, smp.u, xi, 2);
  const double dmu = (xi * xi - m) * smp.u[0] * smp.u[0];
  v.kinetic_rhs = 0.5 * m - 0.25 * xi * dmu;
  v.potential_rhs = 0.5 * m + 0.25 * xi * dmu;
  v.kinetic_error = std::fabs(v.kinetic - v.kinetic_rhs);
  v.potential_error = std::fabs(v.potential - v.potential_rhs);
  return v;
}

double mu_gap(double xi) {
  if (!(xi > 0.0) || xi > 10.0) throw std::invalid_argument("mu_gap needs 0 < xi <= 10");
  // eps = mu - 1; the characteristic function rewritten in eps keeps
  // full relative precision near eps = 0
  const ScalarFn g = [xi](double eps) {
    return eps * hermite_h_weighted(0.5 * eps - 1.0, -xi) +
           xi * hermite_h_weighted(0.5 * eps, -xi);
  };
  const RootBracket b = make_bracket(g, -0.5, -std::numeric_limits<double>::min());
  if (!b.valid()) throw Error(Errc::bracket_failure, "mu_gap: ground state not below 1");
  return -find_root(g, b, 0.0);
}

AsymptoticCheck asymptotic_check(double xi) {
  if (!(xi >= 3.0)) throw std::invalid_argument("asymptotic_check needs xi >= 3");
  const GridSpec grid = GridSpec::around(xi);
  const double m = characteristic_root(1, xi);
  const Sampled smp = characteristic_samples(m, xi, grid);
  const double c = std::pow(kPi, -0.25);
  AsymptoticCheck a;
  std::vector<double> d2(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double s = grid.node(i) - xi;
    const double d = smp.u[i] - c * std::exp(-0.5 * s * s);
    a.sup_deviation = std::max(a.sup_deviation, std::fabs(d));
    d2[i] = d * d;
  }
  a.l2_distance = std::sqrt(quad_simpson(grid, d2));
  a.mu_gap = mu_gap(xi);
  a.observed_prefactor = smp.scale * hermite_h_weighted(0.5 * (m - 1.0), 0.0);
  return a;
}

JInterval j_interval(double lambda) {
  const UniversalConstants& c = universal_constants();
  if (!(lambda > c.theta0)) throw std::invalid_argument("j_interval needs lambda > Theta_0");
  const ScalarFn g = [lambda](double xi) { return mu_value(1, xi) - lambda; };
  JInterval J;
  if (lambda == 1.0) {
    J.lo = 0.0;
  } else {
    double lo = lambda < 1.0 ? 0.0 : -1.0;
    while (g(lo) < 0.0) lo -= 1.0;
    J.lo = find_root(g, make_bracket(g, lo, c.xi0), 1e-12);
  }
  if (lambda >= 1.0) {
    J.hi = std::numeric_limits<double>::infinity();
  } else {
    double hi = c.xi0 + 1.0;
    while (g(hi) < 0.0) {
      hi += 1.0;
      if (hi > 10.0) throw Error(Errc::bracket_failure, "j_interval: upper end beyond xi = 10");
    }
    J.hi = find_root(g, make_bracket(g, c.xi0, hi), 1e-12);
  }
  return J;
}

}  // namespace dgl
