#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "dgl/error.hpp"
#include "dgl/grid.hpp"
#include "dgl/halfline.hpp"
#include "dgl/minimize.hpp"
#include "dgl/parallel.hpp"
#include "dgl/quadrature.hpp"
#include "dgl/report.hpp"
#include "dgl/roots.hpp"
#include "dgl/tridiag.hpp"
#include "oracles.hpp"

using namespace dgl;

TEST_CASE("grid nodes and refinement") {
  const GridSpec g = GridSpec::uniform(10.0, 11);
  CHECK(g.step() == doctest::Approx(1.0));
  CHECK(g.node(0) == 0.0);
  CHECK(g.node(10) == 10.0);
  const GridSpec r = g.refined();
  CHECK(r.n == 21);
  for (std::size_t i = 0; i < g.n; ++i) CHECK(r.node(2 * i) == doctest::Approx(g.node(i)));
  CHECK(GridSpec::around(-3.0).t_max == 10.0);
  CHECK(GridSpec::around(2.5).t_max == 12.5);
  CHECK_THROWS_AS(GridSpec::uniform(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::uniform(1.0, 2), std::invalid_argument);
}

TEST_CASE("find_root on simple functions") {
  auto f = [](double x) { return std::cos(x) - x; };
  const double r = find_root(f, make_bracket(f, 0.0, 1.0), 1e-14);
  CHECK(r == doctest::Approx(0.7390851332151607).epsilon(1e-14));
  auto g = [](double x) { return x * x - 2.0; };
  CHECK(find_root(g, make_bracket(g, 0.0, 2.0), 1e-15) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
  // exact zero at an end
  auto lin = [](double x) { return x - 1.0; };
  CHECK(find_root(lin, make_bracket(lin, 1.0, 3.0), 1e-12) == 1.0);
}

TEST_CASE("find_root rejects a bracket without sign change") {
  auto f = [](double x) { return x * x + 1.0; };
  try {
    find_root(f, make_bracket(f, -1.0, 1.0), 1e-10);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_sign_change);
  }
}

TEST_CASE("scan_bracket finds the first sign change") {
  auto f = [](double x) { return std::sin(x); };
  const RootBracket b = scan_bracket(f, 0.5, 10.0, 100);
  CHECK(b.valid());
  CHECK(b.lo <= std::numbers::pi);
  CHECK(b.hi >= std::numbers::pi);
  try {
    scan_bracket([](double) { return 1.0; }, 0.0, 1.0, 10);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bracket_failure);
  }
}

TEST_CASE("property: find_root recovers random polynomial roots") {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const double r = gen.uniform(-3.0, 3.0);
    const double a = gen.uniform(0.1, 5.0);
    const double c = gen.uniform(0.0, 2.0);
    auto f = [&](double x) { return a * (x - r) * ((x - r) * (x - r) + c); };
    const double lo = r - gen.uniform(0.01, 2.0), hi = r + gen.uniform(0.01, 2.0);
    CHECK(std::fabs(find_root(f, make_bracket(f, lo, hi), 1e-13) - r) <= 1e-12);
  }
}

TEST_CASE("minimize_1d locates interior and endpoint minima") {
  const auto m = minimize_1d([](double x) { return (x - 0.3) * (x - 0.3) + 1.0; }, -1.0, 2.0, 1e-10);
  CHECK(m.x == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(m.fx == doctest::Approx(1.0));
  const auto e = minimize_1d([](double x) { return x; }, 0.0, 1.0, 1e-10);
  CHECK(e.x == 0.0);
}

TEST_CASE("property: minimize_1d never returns worse than an endpoint") {
  oracle::Gen gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const double c = gen.uniform(-2.0, 2.0), s = gen.uniform(0.1, 3.0);
    auto f = [&](double x) { return std::cosh(s * (x - c)); };
    const double lo = gen.uniform(-3.0, 0.0), hi = lo + gen.uniform(0.1, 3.0);
    const auto m = minimize_1d(f, lo, hi, 1e-9);
    CHECK(m.fx <= f(lo));
    CHECK(m.fx <= f(hi));
    CHECK(m.x == doctest::Approx(std::clamp(c, lo, hi)).epsilon(1e-6));
  }
}

TEST_CASE("quadrature exactness") {
  const GridSpec g = GridSpec::uniform(3.0, 31);
  std::vector<double> affine(g.n), cubic(g.n), gauss(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double t = g.node(i);
    affine[i] = 2.0 * t - 1.0;
    cubic[i] = t * t * t - t;
  }
  CHECK(quad(g, affine) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(quad_simpson(g, cubic) == doctest::Approx(81.0 / 4.0 - 4.5).epsilon(1e-13));
  // odd number of intervals takes the 3/8 closing panel
  const GridSpec odd = GridSpec::uniform(3.0, 32);
  std::vector<double> c2(odd.n);
  for (std::size_t i = 0; i < odd.n; ++i) c2[i] = std::pow(odd.node(i), 3) - odd.node(i);
  CHECK(quad_simpson(odd, c2) == doctest::Approx(81.0 / 4.0 - 4.5).epsilon(1e-13));
  std::vector<double> wrong(5);
  CHECK_THROWS_AS(quad(g, wrong), Error);
}

TEST_CASE("quadrature converges on a Gaussian") {
  const GridSpec g = GridSpec::uniform(12.0, 2001);
  std::vector<double> v(g.n);
  for (std::size_t i = 0; i < g.n; ++i) v[i] = std::exp(-g.node(i) * g.node(i));
  CHECK(quad(g, v) == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-12));
  CHECK(quad_simpson(g, v) == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-12));
}

TEST_CASE("eig_tridiag matches the Toeplitz closed form") {
  const std::size_t n = 50;
  std::vector<double> d(n, 2.0), e(n - 1, -1.0);
  const auto ev = eig_tridiag(d, e, 5);
  for (std::size_t k = 0; k < 5; ++k)
    CHECK(ev[k] == doctest::Approx(2.0 - 2.0 * std::cos((k + 1) * std::numbers::pi / (n + 1))).epsilon(1e-13));
}

TEST_CASE("property: eig_tridiag agrees with dense Jacobi rotations") {
  oracle::Gen gen(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(2, 40));
    const auto d = gen.vec(n, -5.0, 5.0);
    auto e = gen.vec(n - 1, -2.0, 2.0);
    if (trial % 5 == 0) e[n / 2 - (n > 2 ? 1 : 0)] = 0.0;  // split matrix
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      a[i][i] = d[i];
      if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = e[i];
    }
    const auto ref = oracle::jacobi_eigenvalues(a);
    const std::size_t k = std::min<std::size_t>(n, 6);
    const auto got = eig_tridiag_vectors(d, e, k);
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(std::fabs(got.values[i] - ref[i]) <= 1e-11);
      CHECK(got.residuals[i] <= 1e-10);
      CHECK(sturm_count(d, e, got.values[i] + 1e-9) >= i + 1);
    }
  }
}

TEST_CASE("eigenvectors of a clustered matrix stay orthogonal") {
  // two decoupled identical blocks give exactly repeated eigenvalues
  const std::vector<double> d{2, 2, 2, 2, 2, 2};
  const std::vector<double> e{-1, -1, 0, -1, -1};
  const auto r = eig_tridiag_vectors(d, e, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < d.size(); ++k) dot += r.vectors[i][k] * r.vectors[j][k];
      CHECK(std::fabs(dot) <= 1e-8);
    }
}

TEST_CASE("property: solve_tridiag against the matrix product") {
  oracle::Gen gen(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 60));
    const auto sub = gen.vec(n > 1 ? n - 1 : 0, -3.0, 3.0);
    const auto sup = gen.vec(n > 1 ? n - 1 : 0, -3.0, 3.0);
    const auto diag = gen.vec(n, -3.0, 3.0);  // not diagonally dominant: pivoting matters
    const auto x = gen.vec(n, -1.0, 1.0);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      b[i] = diag[i] * x[i];
      if (i > 0) b[i] += sub[i - 1] * x[i - 1];
      if (i + 1 < n) b[i] += sup[i] * x[i + 1];
    }
    std::vector<double> y = b;
    if (!solve_tridiag(sub, diag, sup, y)) continue;
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      err = std::max(err, std::fabs(y[i] - x[i]));
      scale = std::max(scale, std::fabs(x[i]));
    }
    CHECK(err <= 1e-7 * std::max(1.0, scale));
  }
}

TEST_CASE("symmetrize gives a similar symmetric matrix") {
  const std::vector<double> sub{1.0, 2.0, 0.5}, diag{4.0, 3.0, 2.0, 1.0}, sup{2.0, 0.5, 3.0};
  const auto s = symmetrize(sub, diag, sup);
  for (std::size_t i = 0; i < 3; ++i) CHECK(s.offdiag[i] * s.offdiag[i] == doctest::Approx(sub[i] * sup[i]));
  std::vector<std::vector<double>> dense(4, std::vector<double>(4, 0.0));
  for (std::size_t i = 0; i < 4; ++i) {
    dense[i][i] = s.diag[i];
    if (i < 3) dense[i][i + 1] = dense[i + 1][i] = s.offdiag[i];
  }
  const auto ev = oracle::jacobi_eigenvalues(dense);
  const auto got = eig_tridiag(s.diag, s.offdiag, 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(ev[i]).epsilon(1e-12));
}

TEST_CASE("half-line operators: harmonic oscillator spectra") {
  const GridSpec g = GridSpec::uniform(10.0, 4001);
  const auto V = shifted_harmonic(g, 0.0);
  const auto neu = neumann_eigenvalues(g, V, 2);
  const auto dir = dirichlet_eigenvalues(g, V, 2);
  CHECK(neu[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(neu[1] == doctest::Approx(5.0).epsilon(1e-5));
  CHECK(dir[0] == doctest::Approx(3.0).epsilon(1e-5));
  CHECK(dir[1] == doctest::Approx(7.0).epsilon(1e-5));
  // second order: the refined grid is four times closer
  const auto fine = neumann_eigenvalues(g.refined(), shifted_harmonic(g.refined(), 0.0), 1);
  CHECK(std::fabs(richardson(neu[0], fine[0]) - 1.0) < 0.05 * std::fabs(neu[0] - 1.0));
}

TEST_CASE("half-line eigenvectors satisfy the discrete equation") {
  const GridSpec g = GridSpec::uniform(11.0, 3001);
  const auto V = shifted_harmonic(g, 1.0);
  const GridEigen e = neumann_eigen(g, V, 2);
  std::vector<double> out(g.n);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& v = e.vectors[k];
    apply_neumann(g, V, v, out);
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < g.n; ++i) err = std::max(err, std::fabs(out[i] - e.values[k] * v[i]));
    CHECK(err < 1e-6);
    std::vector<double> sq(g.n);
    for (std::size_t i = 0; i < g.n; ++i) sq[i] = v[i] * v[i];
    CHECK(quad(g, sq) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(e.vectors[0][0] > 0.0);
  CHECK(boundary_derivative(g, e.vectors[0]) == doctest::Approx(0.0).epsilon(1e-4));
}

TEST_CASE("fourth-order derivative") {
  const GridSpec g = GridSpec::uniform(2.0, 401);
  std::vector<double> s(g.n);
  for (std::size_t i = 0; i < g.n; ++i) s[i] = std::sin(g.node(i));
  const auto d = derivative(g, s);
  double err = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) err = std::max(err, std::fabs(d[i] - std::cos(g.node(i))));
  CHECK(err < 1e-8);
}

TEST_CASE("reports: pass rule and ordering") {
  CHECK(make_report("a", {}, -1e-9).pass);
  CHECK_FALSE(make_report("a", {}, -2e-9).pass);
  const auto eq = make_equality("e", {{"lambda", 0.8}}, 1.0, 1.0 + 1e-7, 1e-6);
  CHECK(eq.pass);
  CHECK(eq.at("lambda") == 0.8);
  CHECK(std::isnan(eq.at("nu")));
  std::vector<CertificateReport> rs{make_report("b", {{"lambda", 0.7}}, 1.0),
                                    make_report("a", {{"lambda", 0.9}}, 1.0),
                                    make_report("b", {{"lambda", 0.6}}, -1.0)};
  sort_reports(rs);
  CHECK(rs[0].name == "a");
  CHECK(rs[1].at("lambda") == 0.6);
  CHECK_FALSE(all_pass(rs));
}

TEST_CASE("parallel_map keeps order and forwards exceptions") {
  const auto sq = parallel_map<int>(100, [](std::size_t i) { return static_cast<int>(i * i); }, 4);
  for (std::size_t i = 0; i < sq.size(); ++i) CHECK(sq[i] == static_cast<int>(i * i));
  CHECK_THROWS_AS(parallel_map<int>(
                      10, [](std::size_t i) -> int { if (i == 7) throw std::runtime_error("x"); return 0; }, 3),
                  std::runtime_error);
}

TEST_CASE("error names") {
  CHECK(to_string(Errc::grid_mismatch) == "GridMismatch");
  CHECK(std::string(Error(Errc::not_stationary, "x").what()) == "NotStationary: x");
}
