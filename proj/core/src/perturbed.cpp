#include "dgl/perturbed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <locale>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "dgl/error.hpp"
#include "dgl/halfline.hpp"
#include "dgl/parallel.hpp"
#include "dgl/quadrature.hpp"

namespace dgl {

namespace {

using Point = std::vector<std::pair<std::string, double>>;

constexpr double kResidualLimit = 1e-8;
constexpr double kGridTol = 1e-12;

std::string fmt_detail(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(10);
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ' ';
    os << k << '=' << v;
    first = false;
  }
  return os.str();
}

// Forward-difference Dirichlet energy; matches the discrete operator exactly.
double dirichlet_energy(const GridSpec& g, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < g.n; ++i) {
    const double d = v[i + 1] - v[i];
    s += d * d;
  }
  return s / g.step();
}

double l4_squared(const UniversalConstants& c) { return std::sqrt(c.u1_l4_fourth); }

// mu_2(nu) - (3 lambda - (lambda - Theta_0) / (zeta^{1/2} ||u_1||_4^2)) - (nu - zeta)^2
double numerator_condition(double lambda, double nu, double zeta, double mu2,
                           const UniversalConstants& c) {
  const double d = nu - zeta;
  return mu2 - (3.0 * lambda - (lambda - c.theta0) / (std::sqrt(zeta) * l4_squared(c))) - d * d;
}

}  // namespace

PerturbedSpectrum spectrum_for_profile(const MinimizerProfile& p, double nu, std::size_t k) {
  if (!(nu >= -1.0 && nu <= 8.0)) throw std::invalid_argument("spectrum: nu must lie in [-1, 8]");
  if (k == 0) throw std::invalid_argument("spectrum: k must be positive");
  const GridSpec& g = p.grid;
  if (p.f.size() != g.n) throw Error(Errc::length_mismatch, "spectrum: profile/grid size");
  if (g.t_max < required_radius(nu) - kGridTol) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "grid radius " << g.t_max << " below nu + 8 = " << required_radius(nu);
    throw Error(Errc::grid_mismatch, os.str());
  }

  std::vector<double> V = shifted_harmonic(g, nu);
  for (std::size_t i = 0; i < g.n; ++i) V[i] += p.lambda * p.f[i] * p.f[i];
  GridEigen e = neumann_eigen(g, V, k);
  for (double r : e.residuals)
    if (!(r <= kResidualLimit)) throw Error(Errc::convergence_failure, "spectrum: eigen residual");

  PerturbedSpectrum s;
  s.lambda = p.lambda;
  s.nu = nu;
  s.zeta = p.z;
  s.grid = g;
  s.values = std::move(e.values);
  s.residuals = std::move(e.residuals);
  s.v1 = std::move(e.vectors.front());
  return s;
}

PerturbedSpectrum spectrum(double lambda, double nu, const ZetaRecord& rec, std::size_t k) {
  const auto& c = universal_constants();
  if (!(lambda >= c.theta0 && lambda <= 1.0))
    throw std::invalid_argument("spectrum: lambda must lie in [Theta_0, 1]");
  if (std::fabs(rec.lambda - lambda) > 1e-12)
    throw std::invalid_argument("spectrum: record was computed for another lambda");
  PerturbedSpectrum s = spectrum_for_profile(rec.profile, nu, k);
  s.zeta = rec.zeta;
  return s;
}

double temple_lower_bound(double lambda, double nu, double zeta, double ratio, double lambda2) {
  const double d2 = (nu - zeta) * (nu - zeta);
  if (d2 == 0.0) return lambda;
  return lambda + d2 * (1.0 - 4.0 * ratio / (lambda2 - lambda - d2));
}

CertificateReport temple_bound(double lambda, double nu, const ZetaRecord& rec, bool use_mu2) {
  const PerturbedSpectrum s = spectrum(lambda, nu, rec, 2);
  const MinimizerProfile& p = rec.profile;
  const double zeta = rec.zeta;
  const double d2 = (nu - zeta) * (nu - zeta);
  const double threshold = lambda + d2;
  double lambda2 = s.lambda2();
  bool relaxed = false;
  if (use_mu2 || lambda2 - threshold < 1e-4) {
    lambda2 = mu_value(2, nu);
    relaxed = true;
  }
  const Point pt = {{"lambda", lambda}, {"nu", nu}, {"zeta", zeta}};
  if (!(lambda2 > threshold)) {
    CertificateReport r =
        make_report("temple-hypothesis", pt, lambda2 - threshold,
                    "hypothesis failed: " + fmt_detail({{"lambda2", lambda2}, {"threshold", threshold}}));
    r.pass = false;
    return r;
  }
  const double ratio = p.potential / (p.l2 * p.l2);
  const double bound = temple_lower_bound(lambda, nu, zeta, ratio, lambda2);
  std::string detail = fmt_detail({{"bound", bound}, {"lambda1", s.lambda1()}, {"lambda2", lambda2}});
  if (relaxed) detail += " (lambda2 replaced by mu2)";
  return make_report("temple-lower-bound", pt, s.lambda1() - bound, std::move(detail));
}

ProofConstants proof_constants(const UniversalConstants& c) {
  const double q = l4_squared(c);
  const double x = c.xi0;
  ProofConstants out;
  out.margin_i = numerator_condition(1.0, 1.33, x, mu_value(2, 1.33), c);
  out.margin_ii = numerator_condition(0.8, 1.5, x, mu_value(2, 1.5), c);
  out.slope_i = -(1.0 - c.theta0) / (2.0 * std::pow(x, 1.5) * q) + 2.0 * (1.33 - 1.0);
  out.slope_ii = -(0.8 - c.theta0) / (2.0 * std::pow(x, 1.5) * q) + 2.0 * (1.5 - std::sqrt(0.8));
  out.j_right_08 = j_interval(0.8).hi;
  return out;
}

std::vector<CertificateReport> proof_constant_reports(const UniversalConstants& c) {
  const ProofConstants k = proof_constants(c);
  std::vector<CertificateReport> out;
  out.push_back(make_report("largenu-i-proof-margin", {{"lambda", 1.0}, {"nu", 1.33}, {"zeta", c.xi0}},
                            k.margin_i, fmt_detail({{"value", k.margin_i}})));
  out.push_back(make_report("largenu-i-proof-slope", {{"lambda", 1.0}, {"nu", 1.33}, {"zeta", c.xi0}},
                            k.slope_i, fmt_detail({{"value", k.slope_i}})));
  out.push_back(make_report("largenu-ii-proof-margin", {{"lambda", 0.8}, {"nu", 1.5}, {"zeta", c.xi0}},
                            k.margin_ii, fmt_detail({{"value", k.margin_ii}})));
  out.push_back(make_report("largenu-ii-proof-slope", {{"lambda", 0.8}, {"nu", 1.5}, {"zeta", c.xi0}},
                            k.slope_ii, fmt_detail({{"value", k.slope_ii}})));
  out.push_back(make_report("largenu-ii-j-endpoint", {{"lambda", 0.8}, {"nu", k.j_right_08}},
                            1.5 - k.j_right_08, fmt_detail({{"root", k.j_right_08}})));
  // mu_2(nu) - 3 - (nu - 1)^2 >= 0 on [0, 1] covers nu <= zeta <= 1
  for (int i = 0; i <= 20; ++i) {
    const double nu = 0.05 * i;
    out.push_back(make_report("largenu-below-zeta", {{"nu", nu}},
                              mu_value(2, nu) - 3.0 - (nu - 1.0) * (nu - 1.0)));
  }
  return out;
}

std::vector<CertificateReport> certify_largenu(const std::vector<double>& lambda_grid,
                                               const std::vector<double>& nu_grid,
                                               LargeNuPart part, unsigned threads) {
  const auto& c = universal_constants();
  const bool part_i = part == LargeNuPart::i;
  const std::string tag = part_i ? "largenu-i" : "largenu-ii";

  std::vector<double> lambdas;
  for (double l : lambda_grid) {
    if (!(l > c.theta0 && l <= 1.0 + kGridTol))
      throw std::invalid_argument("certify_largenu: lambda outside (Theta_0, 1]");
    if (!part_i && l > 0.8 + kGridTol) continue;
    lambdas.push_back(std::min(l, 1.0));
  }
  for (double nu : nu_grid)
    if (!(nu >= -kGridTol && nu <= 1.6 + kGridTol))
      throw std::invalid_argument("certify_largenu: nu outside [0, 1.6]");

  const auto records = parallel_map<ZetaRecord>(
      lambdas.size(), [&](std::size_t i) { return zeta(lambdas[i]); }, threads);

  struct Task {
    std::size_t rec;
    double nu;
  };
  std::vector<Task> tasks;
  for (std::size_t r = 0; r < lambdas.size(); ++r) {
    const JInterval J = j_interval(lambdas[r]);
    for (double nu : nu_grid) {
      if (part_i ? nu > 1.33 + kGridTol : !J.contains(nu)) continue;
      tasks.push_back({r, nu});
    }
  }
  const auto mu2 = parallel_map<double>(
      tasks.size(), [&](std::size_t i) { return mu_value(2, tasks[i].nu); }, threads);
  const auto l1 = parallel_map<double>(
      tasks.size(),
      [&](std::size_t i) {
        const ZetaRecord& rec = records[tasks[i].rec];
        return spectrum(rec.lambda, tasks[i].nu, rec, 1).lambda1();
      },
      threads);

  std::vector<CertificateReport> out;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const ZetaRecord& rec = records[tasks[i].rec];
    const double lam = rec.lambda, nu = tasks[i].nu;
    out.push_back(make_report(tag + "-direct", {{"lambda", lam}, {"nu", nu}, {"zeta", rec.zeta}},
                              l1[i] - (lam - 1e-8), fmt_detail({{"lambda1", l1[i]}})));
    // sufficient conditions are only needed inside J(lambda)
    if (!j_interval(lam).contains(nu)) continue;
    for (double z : {c.xi0, std::sqrt(lam), rec.zeta}) {
      const Point pt = {{"lambda", lam}, {"nu", nu}, {"zeta", z}};
      out.push_back(make_report(tag + "-numerator", pt, numerator_condition(lam, nu, z, mu2[i], c)));
      out.push_back(make_report(tag + "-gap", pt, mu2[i] - lam - (nu - z) * (nu - z)));
    }
  }
  for (auto& r : proof_constant_reports(c))
    if (r.name.rfind(tag + "-", 0) == 0 || (part_i && r.name == "largenu-below-zeta"))
      out.push_back(std::move(r));
  sort_reports(out);
  return out;
}

double lambda1_derivative(const ZetaRecord& rec, double nu, double delta) {
  const double hi = spectrum(rec.lambda, nu + delta, rec, 1).lambda1();
  const double lo = spectrum(rec.lambda, nu - delta, rec, 1).lambda1();
  return (hi - lo) / (2.0 * delta);
}

std::vector<CertificateReport> certify_local_minimum(const ZetaRecord& rec, unsigned threads) {
  const double lam = rec.lambda, z = rec.zeta;
  std::vector<double> nus;
  for (int k = -6; k <= 6; ++k) nus.push_back(z + 0.025 * k);  // k = 0 is the fixed point
  const auto l1 = parallel_map<double>(
      nus.size(), [&](std::size_t i) { return spectrum(lam, nus[i], rec, 1).lambda1(); }, threads);

  double cmin = std::numeric_limits<double>::infinity();
  double l1_zeta = 0.0;
  for (std::size_t i = 0; i < nus.size(); ++i) {
    const double d = nus[i] - z;
    if (i == 6) {
      l1_zeta = l1[i];
      continue;
    }
    cmin = std::min(cmin, (l1[i] - lam) / (d * d));
  }
  const double slope = lambda1_derivative(rec, z);

  const Point pt = {{"lambda", lam}, {"nu", z}, {"zeta", z}};
  std::vector<CertificateReport> out;
  out.push_back(make_report("local-minimum-curvature", pt, cmin, fmt_detail({{"c", cmin}})));
  out.push_back(make_report("local-minimum-stationary", pt, 1e-4 - std::fabs(slope),
                            fmt_detail({{"slope", slope}})));
  out.push_back(make_equality("local-minimum-fixed-point", pt, l1_zeta, lam, 1e-6));
  return out;
}

std::vector<CertificateReport> certify_local_minimum(double lambda, unsigned threads) {
  return certify_local_minimum(zeta(lambda), threads);
}

std::vector<CertificateReport> stationary_identities(double lambda, double nu0,
                                                     const ZetaRecord& rec) {
  const double slope = lambda1_derivative(rec, nu0);
  if (!(std::fabs(slope) <= 1e-4)) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "lambda_1'(" << nu0 << ") = " << slope;
    throw Error(Errc::not_stationary, os.str());
  }
  const PerturbedSpectrum s = spectrum(lambda, nu0, rec, 1);
  const GridSpec& g = s.grid;
  const std::vector<double>& v = s.v1;
  const std::vector<double>& f = rec.profile.f;
  const std::vector<double> fp = derivative(g, f);
  const std::vector<double> t = g.nodes();
  const std::size_t n = g.n;

  std::vector<double> a(n), b(n), cc(n), d(n), e(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v2 = v[i] * v[i];
    a[i] = v2 * f[i] * fp[i];
    b[i] = (t[i] - nu0) * v2;
    cc[i] = (t[i] - nu0) * (t[i] - nu0) * v2;
    d[i] = t[i] * a[i];
    e[i] = f[i] * f[i] * v2;
  }
  const double vff = quad(g, a);
  const double first = quad(g, b);
  const double pot = quad(g, cc);
  const double tvff = quad(g, d);
  const double fv = quad(g, e);
  const double kin = dirichlet_energy(g, v);
  const double l1 = s.lambda1();

  const Point pt = {{"lambda", lambda}, {"nu", nu0}, {"zeta", rec.zeta}};
  std::vector<CertificateReport> out;
  out.push_back(make_equality("stationary-boundary", pt,
                              (l1 - nu0 * nu0 - lambda * f[0] * f[0]) * v[0] * v[0],
                              2.0 * lambda * vff, 1e-4));
  out.push_back(make_equality("stationary-moment", pt, first, 0.0, 1e-4));
  out.push_back(make_equality("stationary-virial", pt, pot + lambda * tvff, kin, 1e-4));
  out.push_back(make_equality("stationary-energy", pt, kin + pot + lambda * fv, l1, 1e-4));
  if (rec.zeta > 0.0 && rec.zeta < nu0 && vff >= 0.0) {
    out.push_back(make_report("stationary-corollary", pt, l1 - lambda, fmt_detail({{"lambda1", l1}})));
  } else {
    out.push_back(make_report("stationary-corollary", pt, 0.0, "hypotheses not met"));
  }
  return out;
}

std::vector<CertificateReport> sandwich(double lambda, double nu, const ZetaRecord& rec,
                                        const UniversalConstants& c) {
  const PerturbedSpectrum s = spectrum(lambda, nu, rec, 2);
  const MinimizerProfile& p = rec.profile;
  const double z = rec.zeta;
  // same-grid unperturbed values: the lower bound compares like with like
  const auto mu_h = neumann_eigenvalues(s.grid, shifted_harmonic(s.grid, nu), 2);
  const double mu1 = mu_value(1, nu), mu2 = mu_value(2, nu);
  const double mu1_zeta = mu_value(1, z);
  const double U = linf_upper_bound(lambda, z, mu1_zeta, c);
  const double linf2 = lambda * p.linf * p.linf;

  std::vector<CertificateReport> out;
  const double mus[2] = {mu1, mu2};
  for (int j = 1; j <= 2; ++j) {
    const Point pt = {{"lambda", lambda}, {"nu", nu}, {"zeta", z}, {"j", double(j)}};
    const double lj = s.values[j - 1];
    out.push_back(make_report("sandwich-lower", pt, lj - mu_h[j - 1]));
    out.push_back(make_report("sandwich-upper-linf", pt, mus[j - 1] + linf2 - lj));
    out.push_back(make_report("sandwich-upper-refined", pt, mus[j - 1] + U - lj));
  }
  const Point pt = {{"lambda", lambda}, {"nu", nu}, {"zeta", z}};
  const double kinetic = mu1 / 2.0 - nu * mu_prime(1, nu) / 4.0;
  const double nagy = mu1 + std::pow(3.0, 0.75) / std::sqrt(2.0) * std::sqrt(z) *
                                (lambda - mu1_zeta) * std::pow(kinetic, 0.25);
  out.push_back(make_report("sandwich-nagy", pt, nagy - s.lambda1()));
  if (!j_interval(lambda).contains(nu))
    out.push_back(make_report("outside-j-interval", pt, s.lambda1() - lambda,
                              fmt_detail({{"mu1", mu1}, {"lambda1", s.lambda1()}})));
  return out;
}

std::vector<double> lambda1_curve(const MinimizerProfile& p, const std::vector<double>& nus,
                                  unsigned threads) {
  return parallel_map<double>(
      nus.size(), [&](std::size_t i) { return spectrum_for_profile(p, nus[i], 1).lambda1(); },
      threads);
}

ZetaRecord far_field_record(double lambda) { return zeta(lambda, GridSpec::uniform(17.0, 12001)); }

std::vector<CertificateReport> far_field(const ZetaRecord& wide, const std::vector<double>& nus,
                                         unsigned threads) {
  const double lam = wide.lambda;
  struct Row {
    double l1 = 0.0, shift = 0.0, gap = 0.0;
  };
  const GridSpec& g = wide.profile.grid;
  const std::vector<double>& f = wide.profile.f;
  const auto rows = parallel_map<Row>(
      nus.size(),
      [&](std::size_t i) {
        const double nu = nus[i];
        Row r;
        const PerturbedSpectrum s = spectrum(lam, nu, wide, 1);
        r.l1 = s.lambda1();
        // <u, K v> = <H u, v> + <u, lambda f^2 v> gives lambda_1 - mu_1 without
        // cancellation when the shift is far below the eigenvalue resolution
        const GridEigen h = neumann_eigen(g, shifted_harmonic(g, nu), 1);
        const std::vector<double>& u = h.vectors.front();
        std::vector<double> num(g.n), den(g.n);
        for (std::size_t k = 0; k < g.n; ++k) {
          den[k] = u[k] * s.v1[k];
          num[k] = lam * f[k] * f[k] * den[k];
        }
        r.shift = quad(g, num) / quad(g, den);
        r.gap = nu > 0.0 ? mu_gap(nu) : 0.0;
        return r;
      },
      threads);
  std::vector<CertificateReport> out;
  for (std::size_t i = 0; i < nus.size(); ++i) {
    const Point pt = {{"lambda", lam}, {"nu", nus[i]}, {"zeta", wide.zeta}};
    const Row& r = rows[i];
    const std::string d = fmt_detail({{"lambda1", r.l1}});
    out.push_back(make_report("far-field-near-one", pt, 0.05 - std::fabs(r.l1 - 1.0), d));
    out.push_back(make_report("far-field-above-lambda", pt, r.l1 - lam, d));
    // lambda_1 - 1 = (lambda_1 - mu_1) + (mu_1 - 1), the first term taken on one grid
    out.push_back(make_report("far-field-above-one", pt, r.shift - r.gap,
                              fmt_detail({{"shift", r.shift}, {"mu1_gap", r.gap}})));
  }
  sort_reports(out);
  return out;
}

}  // namespace dgl
