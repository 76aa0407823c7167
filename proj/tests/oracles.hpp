#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

// Seeded value generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::vector<double> vec(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

// Classical Hermite polynomial by the three-term recurrence.
inline double hermite_poly(int n, double t) {
  double h0 = 1.0, h1 = 2.0 * t;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * t * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

// Integrates u'' = ((t - xi)^2 - mu) u with RK4 from t = T (u = 0, u' = -1)
// down to t = 0, rescaling on the way. Returns (u(0), u'(0)) up to a positive
// factor; the decaying solution dominates the backward integration.
inline std::pair<double, double> shoot_back(double mu, double xi, double T, double h = 1e-3) {
  double u = 0.0, v = -1.0;
  const int steps = static_cast<int>(std::ceil(T / h));
  const double dt = -T / steps;
  auto acc = [&](double t, double y) { return ((t - xi) * (t - xi) - mu) * y; };
  double t = T;
  for (int i = 0; i < steps; ++i) {
    const double k1u = v, k1v = acc(t, u);
    const double k2u = v + 0.5 * dt * k1v, k2v = acc(t + 0.5 * dt, u + 0.5 * dt * k1u);
    const double k3u = v + 0.5 * dt * k2v, k3v = acc(t + 0.5 * dt, u + 0.5 * dt * k2u);
    const double k4u = v + dt * k3v, k4v = acc(t + dt, u + dt * k3u);
    u += dt / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    v += dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    t += dt;
    const double s = std::max(std::fabs(u), std::fabs(v));
    if (s > 1e100) {
      u /= s;
      v /= s;
    }
  }
  return {u, v};
}

// j-th eigenvalue of -d^2/dt^2 + (t - xi)^2 on the half-line with a
// Neumann (or Dirichlet) condition at 0: scan mu upwards for sign changes
// of the boundary quantity, then bisect.
inline double shooting_mu(int j, double xi, bool dirichlet = false) {
  const double T = std::max(xi, 0.0) + 9.0;
  auto g = [&](double mu) {
    const auto [u, v] = shoot_back(mu, xi, T);
    const double s = std::hypot(u, v);
    return dirichlet ? u / s : v / s;
  };
  double lo = 0.2, glo = g(lo);
  int found = 0;
  for (double hi = lo + 0.02; hi < 20.0; hi += 0.02) {
    const double ghi = g(hi);
    if ((glo < 0) != (ghi < 0) && ++found == j) {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((gm < 0) == (glo < 0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    lo = hi;
    glo = ghi;
  }
  return NAN;
}

// Cyclic Jacobi rotations on a dense symmetric matrix; ascending eigenvalues.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace oracle
