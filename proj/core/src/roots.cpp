#include "dgl/roots.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "dgl/error.hpp"

namespace dgl {

RootBracket make_bracket(const ScalarFn& f, double lo, double hi) {
  return {lo, hi, f(lo), f(hi)};
}

RootBracket scan_bracket(const ScalarFn& f, double lo, double hi, int steps) {
  double a = lo;
  double fa = f(a);
  for (int i = 1; i <= steps; ++i) {
    const double b = i == steps ? hi : lo + (hi - lo) * i / steps;
    const double fb = f(b);
    if (fa == 0.0 || fa * fb <= 0.0) return {a, b, fa, fb};
    a = b;
    fa = fb;
  }
  throw Error(Errc::bracket_failure, "no sign change found by scan");
}

// Brent (1973), "zeroin".
double find_root(const ScalarFn& f, const RootBracket& bracket, double tol) {
  constexpr int max_iter = 300;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  if (!(bracket.lo < bracket.hi))
    throw std::invalid_argument("find_root: need lo < hi");
  double a = bracket.lo, b = bracket.hi;
  double fa = bracket.f_lo, fb = bracket.f_hi;
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw Error(Errc::no_sign_change, "f(lo) and f(hi) have the same sign");

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if (fb * fc > 0.0) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;

    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
  }
  throw Error(Errc::max_iterations, "find_root did not converge");
}

}  // namespace dgl
