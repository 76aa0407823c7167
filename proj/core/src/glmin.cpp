#include "dgl/glmin.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dgl/error.hpp"
#include "dgl/halfline.hpp"
#include "dgl/minimize.hpp"
#include "dgl/quadrature.hpp"
#include "dgl/roots.hpp"
#include "dgl/tridiag.hpp"

namespace dgl {

namespace {

constexpr double kResidualTol = 1e-10;
constexpr int kMaxNewton = 200;

struct Discrete {
  const GridSpec& grid;
  std::vector<double> V;
  double lambda;
  double h;

  Discrete(const GridSpec& g, double z, double lam)
      : grid(g), V(shifted_harmonic(g, z)), lambda(lam), h(g.step()) {}

  double weight(std::size_t i) const { return (i == 0 || i + 1 == grid.n) ? 0.5 * h : h; }

  double energy(const std::vector<double>& f) const {
    double kin = 0.0, rest = 0.0;
    for (std::size_t i = 0; i + 1 < grid.n; ++i) {
      const double d = f[i + 1] - f[i];
      kin += d * d;
      const double f2 = f[i] * f[i];
      rest += weight(i) * (V[i] * f2 + lambda * (0.5 * f2 * f2 - f2));
    }
    return kin / h + rest;
  }

  // returns the weighted L2 norm of the residual
  double residual(const std::vector<double>& f, std::vector<double>& r) const {
    r.resize(grid.n);
    apply_neumann(grid, V, f, r);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < grid.n; ++i) {
      r[i] += lambda * f[i] * (f[i] * f[i] - 1.0);
      s += weight(i) * r[i] * r[i];
    }
    return std::sqrt(s);
  }

  // solves (A + diag(shift)) x = rhs on the free nodes 0..n-2
  bool solve(const std::vector<double>& shift, std::vector<double>& rhs) const {
    const std::size_t m = grid.n - 1;
    const double h2 = 1.0 / (h * h);
    std::vector<double> sub(m - 1, -h2), sup(m - 1, -h2), diag(m);
    sup[0] = -2.0 * h2;
    for (std::size_t i = 0; i < m; ++i) diag[i] = 2.0 * h2 + V[i] + shift[i];
    return solve_tridiag(sub, diag, sup, std::span<double>(rhs.data(), m));
  }
};

void fill_norms(MinimizerProfile& p, const Discrete& d) {
  const auto& f = p.f;
  const std::size_t n = p.grid.n;
  double kin = 0.0, pot = 0.0, q2 = 0.0, q4 = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n) kin += (f[i + 1] - f[i]) * (f[i + 1] - f[i]);
    const double w = d.weight(i), f2 = f[i] * f[i];
    pot += w * d.V[i] * f2;
    q2 += w * f2;
    q4 += w * f2 * f2;
    mx = std::max(mx, f[i]);
  }
  p.kinetic = kin / d.h;
  p.potential = pot;
  p.l2 = std::sqrt(q2);
  p.l4 = std::sqrt(std::sqrt(q4));
  p.linf = mx;
  p.f0 = f[0];
  p.energy = p.kinetic + p.potential + p.lambda * (0.5 * q4 - q2);
}

void project(std::vector<double>& f) {
  for (auto& v : f) v = std::max(v, 0.0);
  f.back() = 0.0;
}

}  // namespace

GridSpec profile_grid(double z, std::size_t n) { return GridSpec::around(z, n); }

GridSpec zeta_grid(double lambda, std::size_t n) {
  return GridSpec::uniform(std::sqrt(lambda) + 10.1, n);
}

MinimizerProfile minimize_functional(double z, double lambda, const GridSpec& grid,
                                     std::span<const double> start) {
  if (!(lambda > 0.0 && lambda <= 1.2)) throw std::invalid_argument("lambda must lie in (0, 1.2]");
  if (!(z >= -2.0 && z <= 4.0)) throw std::invalid_argument("z must lie in [-2, 4]");
  if (!start.empty() && start.size() != grid.n)
    throw Error(Errc::length_mismatch, "start profile does not match the grid");

  const Discrete d(grid, z, lambda);
  MinimizerProfile p;
  p.z = z;
  p.lambda = lambda;
  p.grid = grid;
  p.f.assign(grid.n, 0.0);

  const GridEigen ground = neumann_eigen(grid, d.V, 1);
  p.mu1_h = ground.values[0];
  if (lambda <= p.mu1_h) {
    fill_norms(p, d);
    return p;
  }

  std::vector<double>& f = p.f;
  if (!start.empty() && *std::max_element(start.begin(), start.end()) > 0.0) {
    f.assign(start.begin(), start.end());
    project(f);
  } else {
    const auto& u = ground.vectors[0];
    double q4 = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) q4 += d.weight(i) * std::pow(u[i], 4);
    const double rho = std::sqrt((lambda - p.mu1_h) / (lambda * q4));
    for (std::size_t i = 0; i < grid.n; ++i) f[i] = rho * u[i];
    project(f);
  }

  const std::size_t m = grid.n - 1;
  std::vector<double> r, step(grid.n), shift(m), trial(grid.n), rtrial;
  double res = d.residual(f, r);
  double e = d.energy(f);
  int it = 0;
  for (; it < kMaxNewton && res > kResidualTol; ++it) {
    for (std::size_t i = 0; i < m; ++i) {
      shift[i] = lambda * (3.0 * f[i] * f[i] - 1.0);
      step[i] = -r[i];
    }
    step[m] = 0.0;
    bool ok = d.solve(shift, step);
    double slope = 0.0;
    for (std::size_t i = 0; i < m && ok; ++i) slope += 2.0 * d.weight(i) * r[i] * step[i];
    if (!ok || !(slope < 0.0)) {
      // Sobolev gradient fallback
      std::fill(shift.begin(), shift.end(), 1.0);
      for (std::size_t i = 0; i < m; ++i) step[i] = -r[i];
      step[m] = 0.0;
      if (!d.solve(shift, step))
        throw Error(Errc::convergence_failure, "minimize_functional: singular preconditioner");
      slope = 0.0;
      for (std::size_t i = 0; i < m; ++i) slope += 2.0 * d.weight(i) * r[i] * step[i];
    }
    if (res < 1e-6) {
      // quadratic regime: energy differences are below rounding
      for (std::size_t i = 0; i < grid.n; ++i) f[i] += step[i];
      project(f);
      res = d.residual(f, r);
      e = d.energy(f);
      continue;
    }
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
      for (std::size_t i = 0; i < grid.n; ++i) trial[i] = f[i] + alpha * step[i];
      project(trial);
      const double et = d.energy(trial);
      if (et <= e + 1e-4 * alpha * slope) {
        f.swap(trial);
        e = et;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw Error(Errc::convergence_failure, "minimize_functional: line search stalled");
    res = d.residual(f, r);
  }
  if (res > kResidualTol)
    throw Error(Errc::convergence_failure,
                "minimize_functional: residual " + std::to_string(res) + " after " +
                    std::to_string(it) + " iterations");
  p.residual = res;
  p.iterations = it;
  fill_norms(p, d);
  return p;
}

std::vector<double> euler_lagrange_residual(const MinimizerProfile& p) {
  const Discrete d(p.grid, p.z, p.lambda);
  std::vector<double> r;
  d.residual(p.f, r);
  r.back() = 0.0;
  return r;
}

ShootingResult shoot_profile(double z, double lambda, double t_max, double h) {
  if (!(h > 0.0) || !(t_max > 0.0)) throw std::invalid_argument("shoot_profile: bad step");
  // +1: the shot crosses zero, -1: it turns upwards, 0: reached t_max
  auto shoot = [&](double a, std::vector<double>* ts, std::vector<double>* fs) {
    auto rhs = [&](double t, double f) { return ((t - z) * (t - z) + lambda * (f * f - 1.0)) * f; };
    double t = 0.0, f = a, g = 0.0;
    if (ts) {
      ts->assign(1, 0.0);
      fs->assign(1, a);
    }
    const std::size_t steps = static_cast<std::size_t>(std::ceil(t_max / h));
    for (std::size_t k = 0; k < steps; ++k) {
      const double k1f = g, k1g = rhs(t, f);
      const double k2f = g + 0.5 * h * k1g, k2g = rhs(t + 0.5 * h, f + 0.5 * h * k1f);
      const double k3f = g + 0.5 * h * k2g, k3g = rhs(t + 0.5 * h, f + 0.5 * h * k2f);
      const double k4f = g + h * k3g, k4g = rhs(t + h, f + h * k3f);
      f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
      g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
      t += h;
      if (f < 0.0) return 1;
      if (g > 0.0 && t > z) return -1;
      if (ts) {
        ts->push_back(t);
        fs->push_back(f);
      }
    }
    return 0;
  };
  double lo = 1e-9, hi = 1.0;
  const int s_lo = shoot(lo, nullptr, nullptr);
  const int s_hi = shoot(hi, nullptr, nullptr);
  if (s_lo == s_hi || s_lo == 0 || s_hi == 0)
    throw Error(Errc::bracket_failure, "shoot_profile: f(0) not bracketed in (0, 1]");
  for (int k = 0; k < 200 && hi - lo > 1e-16 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    const int s = shoot(mid, nullptr, nullptr);
    if (s == 0) {
      lo = hi = mid;
      break;
    }
    (s == s_lo ? lo : hi) = mid;
  }
  ShootingResult out;
  out.f0 = 0.5 * (lo + hi);
  shoot(out.f0, &out.t, &out.f);
  return out;
}

double decay_ratio(const MinimizerProfile& p, double rate, double t0, double t1) {
  const double h = p.grid.step();
  const auto i0 = static_cast<std::size_t>(std::lround(t0 / h));
  const auto i1 = std::min(p.grid.n - 2, static_cast<std::size_t>(std::lround(t1 / h)));
  if (i0 >= i1) throw std::invalid_argument("decay_ratio: empty window");
  auto scaled = [&](std::size_t i) {
    const double s = p.grid.node(i) - p.z;
    return p.f[i] * std::exp(rate * s * s);
  };
  const double ref = scaled(i0);
  double worst = 0.0;
  for (std::size_t i = i0; i <= i1; ++i) worst = std::max(worst, scaled(i) / ref);
  return worst;
}

double moment(const MinimizerProfile& p) {
  std::vector<double> w(p.grid.n);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = (p.grid.node(i) - p.z) * p.f[i] * p.f[i];
  return quad(p.grid, w);
}

ZetaRecord zeta(double lambda) { return zeta(lambda, zeta_grid(lambda)); }

ZetaRecord zeta(double lambda, const GridSpec& grid) {
  const UniversalConstants& c = universal_constants();
  if (!(lambda > c.theta0 && lambda <= 1.0))
    throw std::invalid_argument("zeta needs Theta_0 < lambda <= 1");
  ZetaRecord rec;
  rec.lambda = lambda;

  const double lo = std::sqrt(0.5 * lambda) - 0.1, hi = std::sqrt(lambda) + 0.1;
  const int steps = static_cast<int>(std::ceil((hi - lo) / 0.02 - 1e-9));
  for (int k = 0; k <= steps; ++k) {
    const double z = std::min(hi, lo + 0.02 * k);
    rec.scan.emplace_back(z, minimize_functional(z, lambda, grid).energy);
  }
  const auto& s = rec.scan;
  std::size_t best = 0;
  for (std::size_t k = 1; k < s.size(); ++k)
    if (s[k].second < s[best].second) best = k;
  if (!(s[best].second < 0.0))
    throw Error(Errc::convergence_failure, "zeta: no nontrivial minimizer on the scan");

  const ScalarFn energy = [&](double z) { return minimize_functional(z, lambda, grid).energy; };
  const ScalarFn mom = [&](double z) { return moment(minimize_functional(z, lambda, grid)); };
  auto refine = [&](std::size_t k, std::pair<double, double>& br) {
    const std::size_t a = k == 0 ? 0 : k - 1, b = std::min(k + 1, s.size() - 1);
    br = {s[a].first, s[b].first};
    const MinimumResult m = minimize_1d(energy, br.first, br.second, 1e-5);
    for (double w : {2e-3, 1e-2}) {
      const double l = std::max(br.first, m.x - w), r = std::min(br.second, m.x + w);
      const RootBracket rb = make_bracket(mom, l, r);
      if (rb.valid()) return find_root(mom, rb, 1e-12);
    }
    const RootBracket rb = make_bracket(mom, br.first, br.second);
    if (!rb.valid()) return m.x;
    return find_root(mom, rb, 1e-12);
  };

  rec.zeta = refine(best, rec.bracket);
  rec.profile = minimize_functional(rec.zeta, lambda, grid);
  rec.minima.push_back(rec.zeta);
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    if (k == best || k + 1 == best || k == best + 1) continue;
    const bool local = s[k].second <= s[k - 1].second && s[k].second <= s[k + 1].second;
    if (local && s[k].second < 0.0 && s[k].second <= s[best].second + 1e-4) {
      std::pair<double, double> br;
      rec.minima.push_back(refine(k, br));
    }
  }
  rec.multiple_minima = rec.minima.size() > 1;
  return rec;
}

std::vector<CertificateReport> identity_suite(const ZetaRecord& rec) {
  const MinimizerProfile& p = rec.profile;
  const double lam = rec.lambda, z = rec.zeta;
  const double kin = p.kinetic, pot = p.potential, q4 = p.l4_fourth(), q2 = p.l2 * p.l2;
  const std::vector<std::pair<std::string, double>> pt = {{"lambda", lam}, {"zeta", z}};
  constexpr double tol = 1e-5;
  auto rel = [&](std::string name, double lhs, double rhs, double scale) {
    std::ostringstream os;
    os.precision(15);
    os << "lhs=" << lhs << " rhs=" << rhs;
    return make_report(std::move(name), pt, tol * scale - std::fabs(lhs - rhs), os.str());
  };
  std::vector<CertificateReport> out;
  out.push_back(rel("energy-identity", kin + pot + lam * q4, lam * q2,
                    kin + pot + lam * q4 + lam * q2));
  out.push_back(rel("virial-balance", kin - pot + 0.25 * lam * q4, 0.0,
                    kin + pot + 0.25 * lam * q4));
  out.push_back(rel("virial-kinetic", 2.0 * kin + 1.25 * lam * q4, lam * q2,
                    2.0 * kin + 1.25 * lam * q4 + lam * q2));
  out.push_back(rel("virial-potential", 2.0 * pot + 0.75 * lam * q4, lam * q2,
                    2.0 * pot + 0.75 * lam * q4 + lam * q2));
  if (p.trivial()) {
    out.push_back(rel("boundary-value", (lam - z * z) * p.f0 * p.f0 - 0.5 * lam * std::pow(p.f0, 4),
                      0.0, 0.0));
  } else {
    const double rhs = 2.0 / lam * (lam - z * z);
    out.push_back(rel("boundary-value", p.f0 * p.f0, rhs, std::max(p.f0 * p.f0, std::fabs(rhs))));
  }
  std::vector<double> absmom(p.grid.n);
  for (std::size_t i = 0; i < absmom.size(); ++i)
    absmom[i] = std::fabs(p.grid.node(i) - z) * p.f[i] * p.f[i];
  out.push_back(rel("moment-condition", moment(p), 0.0, quad(p.grid, absmom)));
  out.push_back(make_report("zeta-squared-below-lambda", pt, lam - z * z));
  return out;
}

double linf_upper_bound(double lambda, double z, double mu1_z, const UniversalConstants& c) {
  const double inner =
      0.5 - 5.0 * (lambda - c.theta0) / (12.0 * std::sqrt(z) * lambda * std::sqrt(c.u1_l4_fourth));
  return 9.0 / std::pow(2.0, 4.0 / 3.0) * std::pow(z, 2.0 / 3.0) * std::cbrt(lambda) *
         std::cbrt(inner) * (lambda - mu1_z);
}

std::vector<CertificateReport> norm_bounds(const ZetaRecord& rec, const UniversalConstants& c) {
  const MinimizerProfile& p = rec.profile;
  const double lam = rec.lambda, z = rec.zeta;
  const double mu1 = mu_value(1, z);
  const double u4sq = std::sqrt(c.u1_l4_fourth);
  const std::vector<std::pair<std::string, double>> pt = {{"lambda", lam}, {"zeta", z}};
  const double linf_upper = linf_upper_bound(lam, z, mu1, c);
  const double lam_linf2 = lam * p.linf * p.linf;
  const double lam_l4sq = lam * p.l4 * p.l4;
  std::vector<CertificateReport> out;
  out.push_back(make_report("linf-lower", pt, lam_linf2 - 2.0 * (lam - z * z)));
  out.push_back(make_report("linf-upper", pt, linf_upper - lam_linf2));
  out.push_back(make_report("linf-at-most-one", pt, 1.0 + 1e-8 - p.linf));
  out.push_back(make_report("l4-lower", pt, lam_l4sq - (lam - c.theta0) / u4sq));
  out.push_back(make_report("l4-upper", pt, 1.5 * std::sqrt(z) * (lam - mu1) - lam_l4sq));
  out.push_back(
      make_report("l2-upper", pt, 1.5 * std::sqrt(z) * std::sqrt((lam - mu1) / lam) - p.l2));
  out.push_back(make_report("quartic-below-linear", pt,
                            (lam - mu1) * p.l2 * p.l2 - lam * p.l4_fourth()));
  out.push_back(make_report("u1-l4-limit-bound", pt, c.u1_l4_fourth - 4.0 / (9.0 * c.xi0)));
  return out;
}

std::vector<CertificateReport> zeta_bounds(const ZetaRecord& rec, const UniversalConstants& c) {
  const double lam = rec.lambda, z = rec.zeta;
  const std::vector<std::pair<std::string, double>> pt = {{"lambda", lam}, {"zeta", z}};
  std::vector<CertificateReport> out;
  out.push_back(make_report("zeta-above-sqrt-half-lambda", pt, z - std::sqrt(0.5 * lam)));
  out.push_back(make_report("zeta-below-sqrt-lambda", pt, std::sqrt(lam) - z));
  out.push_back(make_report("zeta-above-xi0", pt, z - c.xi0));
  out.push_back(make_report("zeta-in-j-interval", pt, lam - mu_value(1, z)));
  return out;
}

AuxiliaryCheck auxiliary_function(const MinimizerProfile& p) {
  const double f0 = p.f0;
  return {(p.lambda - p.z * p.z) * f0 * f0 - 0.5 * p.lambda * f0 * f0 * f0 * f0, 2.0 * moment(p)};
}

double surface_energy(const ZetaRecord& rec) {
  return 0.5 * rec.lambda * rec.profile.l4_fourth();
}

double surface_energy(double lambda) { return surface_energy(zeta(lambda)); }

void write_profile_csv(std::ostream& os, const MinimizerProfile& p) {
  std::ostringstream buf;
  buf.imbue(std::locale::classic());
  buf.precision(12);
  buf << "# z=" << p.z << "\n# lambda=" << p.lambda << "\n# energy=" << p.energy
      << "\n# l2=" << p.l2 << "\n# l4=" << p.l4 << "\n# linf=" << p.linf << "\n# f0=" << p.f0
      << "\n# t_max=" << p.grid.t_max << "\n# n=" << p.grid.n << "\nt,f\n";
  for (std::size_t i = 0; i < p.grid.n; ++i) buf << p.grid.node(i) << ',' << p.f[i] << '\n';
  os << buf.str();
}

}  // namespace dgl
