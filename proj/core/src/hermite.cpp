#include "dgl/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dgl/error.hpp"

namespace dgl {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRescale = 1e250;
const double kLnRescale = std::log(kRescale);

// value = mant * exp(ln)
struct Scaled {
  double mant = 0.0;
  double ln = 0.0;
};

double sinpi(double x) {
  double r = std::fmod(x, 2.0);  // exact
  if (r < 0.0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == 1.5) return -1.0;
  return std::sin(kPi * r);
}

// M(a, b, x) for x >= 0, term ratio stopping
Scaled kummer_m(double a, double b, double x) {
  double sum = 1.0, term = 1.0, ln = 0.0;
  for (int k = 0; k < 20000; ++k) {
    term *= (a + k) / (b + k) * x / (k + 1);
    sum += term;
    if (term == 0.0) break;
    if (std::fabs(sum) > kRescale || std::fabs(term) > kRescale) {
      sum /= kRescale;
      term /= kRescale;
      ln += kLnRescale;
    }
    if (k + 1 > -a && std::fabs(term) <= 1e-17 * std::fabs(sum)) break;
  }
  return {sum, ln};
}

Scaled hermite_kummer(double nu, double t) {
  const double x = t * t;
  const double r1 = rgamma(0.5 * (1.0 - nu));
  const double r2 = rgamma(-0.5 * nu);
  Scaled m1{0.0, 0.0}, m2{0.0, 0.0};
  if (r1 != 0.0) m1 = kummer_m(-0.5 * nu, 0.5, x);
  if (r2 != 0.0 && t != 0.0) m2 = kummer_m(0.5 * (1.0 - nu), 1.5, x);
  double a = r1 * m1.mant;
  double b = -2.0 * t * r2 * m2.mant;
  double ln = std::max(a != 0.0 ? m1.ln : -INFINITY, b != 0.0 ? m2.ln : -INFINITY);
  if (!std::isfinite(ln)) return {0.0, 0.0};
  a = a != 0.0 ? a * std::exp(m1.ln - ln) : 0.0;
  b = b != 0.0 ? b * std::exp(m2.ln - ln) : 0.0;
  return {a + b, ln + nu * std::log(2.0) + 0.5 * std::log(kPi)};
}

// H_nu(s) ~ (2s)^nu 2F0(-nu/2, (1-nu)/2; ; -1/s^2); false if the series
// has not settled to full precision
bool hermite_asymptotic(double nu, double s, double& value) {
  const double a = -0.5 * nu, b = 0.5 * (1.0 - nu);
  const double z = -1.0 / (s * s);
  double sum = 1.0, term = 1.0, biggest = 1.0;
  for (int k = 0; k < 1000; ++k) {
    const double next = term * (a + k) * (b + k) / (k + 1) * z;
    if (next == 0.0) {
      value = std::pow(2.0 * s, nu) * sum;
      return true;
    }
    if (std::fabs(next) > std::fabs(term) && k > std::fabs(nu) + 2.0) return false;
    term = next;
    sum += term;
    biggest = std::max(biggest, std::fabs(term));
    if (std::fabs(term) <= 1e-17 * std::fabs(sum)) {
      if (biggest > 1e3 * std::fabs(sum)) return false;
      value = std::pow(2.0 * s, nu) * sum;
      return true;
    }
  }
  return false;
}

// One Taylor step of y'' = 2t y' - 2 nu y from t0 to t0 + tau.
void taylor_step(double nu, double t0, double tau, double& y, double& dy) {
  double c0 = y, c1 = dy;
  double val = c0 + c1 * tau, der = c1;
  double pw = tau;  // tau^(k+1)
  int small = 0;
  for (int k = 0; k < 400; ++k) {
    const double c2 = (2.0 * t0 * (k + 1) * c1 + 2.0 * (k - nu) * c0) / ((k + 2.0) * (k + 1.0));
    const double dterm = (k + 2) * c2 * pw;
    pw *= tau;
    const double vterm = c2 * pw;
    val += vterm;
    der += dterm;
    c0 = c1;
    c1 = c2;
    if (std::fabs(vterm) <= 1e-18 * std::fabs(val) && std::fabs(dterm) <= 1e-18 * std::fabs(der)) {
      if (++small >= 3) break;
    } else {
      small = 0;
    }
  }
  y = val;
  dy = der;
}

bool use_kummer(double nu, double t) { return t <= 0.0 || (t <= 1.5 && nu >= -2.0); }

struct OdeStart {
  double s, y, dy;
};

OdeStart ode_start(double nu, double t) {
  double s = std::max({8.0, t, 3.0 * std::sqrt(std::fabs(nu) + 1.0), 0.75 * std::fabs(nu)});
  for (int attempt = 0; attempt < 20; ++attempt, s += 4.0) {
    double y, ym1;
    if (hermite_asymptotic(nu, s, y) && hermite_asymptotic(nu - 1.0, s, ym1))
      return {s, y, 2.0 * nu * ym1};
  }
  throw Error(Errc::unsupported_range,
              "asymptotic start for H_nu failed, nu = " + std::to_string(nu));
}

// Integrate from (start.s, y, dy) down to each target in descending order.
template <class Sink>
void ode_sweep(double nu, OdeStart st, std::span<const double> descending, Sink&& sink) {
  double t0 = st.s, y = st.y, dy = st.dy;
  for (std::size_t i = 0; i < descending.size(); ++i) {
    const double target = descending[i];
    while (t0 > target) {
      const double hmax = std::min(0.25, 1.0 / std::max(t0, 1.0));
      const double h = std::min(hmax, t0 - target);
      taylor_step(nu, t0, -h, y, dy);
      t0 = h == t0 - target ? target : t0 - h;
    }
    sink(i, y);
  }
}

void check_arg(double nu, double t) {
  if (!(std::fabs(t) <= kHermiteMaxArg))
    throw Error(Errc::unsupported_range, "|t| > 30 in hermite_h (t = " + std::to_string(t) + ")");
  if (!std::isfinite(nu) || std::fabs(nu) > 150.0)
    throw Error(Errc::unsupported_range, "|nu| > 150 in hermite_h");
}

double ode_value(double nu, double t) {
  double out = 0.0;
  const double target[1] = {t};
  ode_sweep(nu, ode_start(nu, t), target, [&](std::size_t, double y) { out = y; });
  return out;
}

}  // namespace

double rgamma(double x) {
  if (x >= 0.5) return 1.0 / std::tgamma(x);
  // reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
  const double s = sinpi(x);
  if (s == 0.0) return 0.0;
  return s * std::tgamma(1.0 - x) / kPi;
}

double hermite_h(double nu, double t) {
  check_arg(nu, t);
  if (use_kummer(nu, t)) {
    const Scaled v = hermite_kummer(nu, t);
    return v.mant * std::exp(v.ln);
  }
  return ode_value(nu, t);
}

double hermite_h_weighted(double nu, double t) {
  check_arg(nu, t);
  if (use_kummer(nu, t)) {
    const Scaled v = hermite_kummer(nu, t);
    return v.mant * std::exp(v.ln - 0.5 * t * t);
  }
  return ode_value(nu, t) * std::exp(-0.5 * t * t);
}

std::vector<double> hermite_h_weighted(double nu, std::span<const double> ts) {
  std::vector<double> out(ts.size());
  std::vector<std::size_t> ode_idx;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    check_arg(nu, ts[i]);
    if (use_kummer(nu, ts[i])) {
      const Scaled v = hermite_kummer(nu, ts[i]);
      out[i] = v.mant * std::exp(v.ln - 0.5 * ts[i] * ts[i]);
    } else {
      ode_idx.push_back(i);
    }
  }
  if (ode_idx.empty()) return out;
  std::sort(ode_idx.begin(), ode_idx.end(),
            [&](std::size_t a, std::size_t b) { return ts[a] > ts[b]; });
  std::vector<double> targets(ode_idx.size());
  for (std::size_t k = 0; k < ode_idx.size(); ++k) targets[k] = ts[ode_idx[k]];
  ode_sweep(nu, ode_start(nu, targets.front()), targets, [&](std::size_t k, double y) {
    out[ode_idx[k]] = y * std::exp(-0.5 * targets[k] * targets[k]);
  });
  return out;
}

}  // namespace dgl
