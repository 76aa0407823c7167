#include <cmath>
#include <vector>

#include "doctest.h"
#include "dgl/degennes.hpp"
#include "dgl/quadrature.hpp"
#include "oracles.hpp"

using namespace dgl;

namespace {

const std::vector<double> kSample{0.0, 0.5, 0.7681836, 1.0, 1.33, 1.5, 2.0};

// golden-section minimum of the shooting oracle
double oracle_theta0(double* where) {
  double a = 0.6, b = 0.95;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = oracle::shooting_mu(1, c), fd = oracle::shooting_mu(1, d);
  while (b - a > 1e-7) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = oracle::shooting_mu(1, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = oracle::shooting_mu(1, d);
    }
  }
  *where = 0.5 * (a + b);
  return std::min(fc, fd);
}

}  // namespace

TEST_CASE("exact anchors") {
  CHECK(mu_value(1, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mu_value(2, 0.0) == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(mu_value(3, 0.0) == doctest::Approx(9.0).epsilon(1e-10));
  CHECK(mu_value(2, 1.0) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(mu_value(3, std::sqrt(2.5)) == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(dirichlet_mu(1, 0.0) == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(dirichlet_mu(2, 0.0) == doctest::Approx(7.0).epsilon(1e-6));
}

TEST_CASE("characteristic and finite-difference backends agree") {
  for (int j = 1; j <= 2; ++j)
    for (double xi : kSample)
      CHECK(std::fabs(mu_value(j, xi) - mu_value(j, xi, Method::finite_difference)) <= 1e-6);
}

TEST_CASE("both backends against the shooting oracle") {
  for (int j = 1; j <= 3; ++j)
    for (double xi : {-1.0, 0.3, 1.1, 2.4, 4.0}) {
      const double ref = oracle::shooting_mu(j, xi);
      CHECK(mu_value(j, xi) == doctest::Approx(ref).epsilon(1e-9));
      CHECK(mu_value(j, xi, Method::finite_difference) == doctest::Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("dirichlet values against the shooting oracle") {
  for (double xi : {0.0, 1.0, 2.5})
    for (int j = 1; j <= 2; ++j)
      CHECK(dirichlet_mu(j, xi) == doctest::Approx(oracle::shooting_mu(j, xi, true)).epsilon(1e-6));
  CHECK(dirichlet_mu(1, 4.0) > 1.0);
  CHECK(dirichlet_mu(1, 4.0) < 1.0 + 1e-3);
}

TEST_CASE("property: Neumann below Dirichlet, dirichlet decreasing") {
  oracle::Gen gen(17);
  double prev = 1e9;
  for (int i = 0; i <= 8; ++i) {
    const double xi = 0.5 * i;
    const double d = dirichlet_mu(1, xi);
    CHECK(d < prev);
    prev = d;
  }
  for (int trial = 0; trial < 15; ++trial) {
    const double xi = gen.uniform(-2.0, 5.0);
    const int j = gen.integer(1, 3);
    CHECK(mu_value(j, xi) <= dirichlet_mu(j, xi) + 1e-9);
  }
}

TEST_CASE("eigenfunction normalization and sign") {
  for (Method m : {Method::characteristic, Method::finite_difference}) {
    const EigenResult r = mu(2, 0.9, m);
    std::vector<double> sq(r.u.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = r.u[i] * r.u[i];
    CHECK(quad_simpson(r.grid, sq) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.u[0] > 0.0);
  }
  const EigenResult a = mu(1, 1.0), b = mu(1, 1.0, Method::finite_difference);
  double diff = 0.0;
  for (std::size_t i = 0; i < a.u.size(); ++i) diff = std::max(diff, std::fabs(a.u[i] - b.u[i]));
  CHECK(diff < 1e-4);
}

TEST_CASE("derivative formulas agree") {
  for (int j = 1; j <= 2; ++j)
    for (double xi : kSample) {
      const double dh = mu_prime(j, xi);
      const double fh = mu_prime_feynman(j, xi);
      const double d = 1e-4;
      const double cd = (mu_value(j, xi + d) - mu_value(j, xi - d)) / (2.0 * d);
      CHECK(std::fabs(dh - fh) <= 1e-5);
      CHECK(std::fabs(dh - cd) <= 1e-5);
    }
  CHECK(mu_prime(1, 0.0) < 0.0);
  const EigenResult r = mu(2, 0.5);
  CHECK(mu_prime(2, 0.5) == doctest::Approx((0.25 - r.mu) * r.u[0] * r.u[0]).epsilon(1e-8));
}

TEST_CASE("virial identities") {
  const auto& c = universal_constants();
  const VirialCheck v0 = virial_check(1, c.xi0);
  CHECK(v0.kinetic == doctest::Approx(c.theta0 / 2.0).epsilon(1e-6));
  CHECK(v0.potential == doctest::Approx(c.theta0 / 2.0).epsilon(1e-6));
  CHECK(virial_check(1, 0.0).kinetic == doctest::Approx(0.5).epsilon(1e-6));
  const VirialCheck v = virial_check(2, 1.3);
  CHECK(v.kinetic_error <= 1e-6);
  CHECK(v.potential_error <= 1e-6);
}

TEST_CASE("asymptotics in xi") {
  AsymptoticCheck prev = asymptotic_check(3.0);
  for (double xi : {4.0, 5.0, 6.0}) {
    const AsymptoticCheck a = asymptotic_check(xi);
    CHECK(a.sup_deviation < prev.sup_deviation);
    CHECK(a.mu_gap < prev.mu_gap);
    prev = a;
  }
  CHECK(asymptotic_check(5.0).mu_gap < 1e-6);
  CHECK(asymptotic_check(6.0).l2_distance < 1e-5);
  CHECK(asymptotic_check(6.0).observed_prefactor == doctest::Approx(std::pow(M_PI, -0.25)).epsilon(1e-6));
  // resolved far below rounding of mu itself
  CHECK(mu_gap(2.0) == doctest::Approx(1.0 - mu_value(1, 2.0)).epsilon(1e-6));
  CHECK(mu_gap(7.0) > 0.0);
  CHECK(mu_gap(7.0) < mu_gap(6.0));
}

TEST_CASE("universal constants against the shooting oracle") {
  const auto& c = universal_constants();
  double where = 0.0;
  const double theta = oracle_theta0(&where);
  CHECK(c.theta0 == doctest::Approx(theta).epsilon(1e-9));
  CHECK(c.xi0 == doctest::Approx(where).epsilon(1e-5));
  // frozen from the oracle above
  CHECK(c.theta0 == doctest::Approx(0.590106125).epsilon(1e-9));
  CHECK(c.xi0 * c.xi0 == doctest::Approx(c.theta0).epsilon(1e-8));
  CHECK(c.xi_hat_2 == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(c.xi_hat_3 == doctest::Approx(std::sqrt(2.5)).epsilon(1e-8));
  CHECK(c.xi0_2 > 0.0);
  CHECK(c.xi0_2 < std::sqrt(3.0));
  CHECK(c.xi0_3 < std::sqrt(5.0));
  CHECK(std::fabs(mu_prime(2, c.xi0_2)) < 1e-7);
  CHECK(std::fabs(mu_prime(3, c.xi0_3)) < 1e-7);
  CHECK(c.mu2_min == doctest::Approx(c.xi0_2 * c.xi0_2).epsilon(1e-8));
}

TEST_CASE("analytic lower bounds all hold") {
  const auto rs = analytic_lower_bounds();
  CHECK(rs.size() > 10);
  for (const auto& r : rs) {
    INFO(r.name);
    CHECK(r.pass);
  }
}

TEST_CASE("mu_1 has a single critical point on [0, 2]") {
  int changes = 0;
  double prev = mu_prime(1, 0.0);
  for (int i = 1; i <= 200; ++i) {
    const double d = mu_prime(1, 0.01 * i);
    if ((d < 0) != (prev < 0)) ++changes;
    prev = d;
  }
  CHECK(changes == 1);
}

TEST_CASE("J interval") {
  const JInterval J = j_interval(0.8);
  CHECK(mu_value(1, J.lo) == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(mu_value(1, J.hi) == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(J.hi == doctest::Approx(1.496).epsilon(1e-3));
  CHECK(J.contains(universal_constants().xi0));
  CHECK(std::isinf(j_interval(1.0).hi));
  CHECK(j_interval(1.0).lo == 0.0);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(mu_value(4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(mu_value(1, 11.0), std::invalid_argument);
  CHECK_THROWS_AS(asymptotic_check(2.0), std::invalid_argument);
}
