#pragma once

#include <functional>

namespace dgl {

using ScalarFn = std::function<double(double)>;

/// Interval [lo, hi] with the function values at its ends; a valid bracket
/// has lo < hi and f_lo * f_hi <= 0.
struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;

  bool valid() const noexcept { return lo < hi && !(f_lo * f_hi > 0.0); }
};

/// Evaluates f at both ends. Does not check the sign condition.
RootBracket make_bracket(const ScalarFn& f, double lo, double hi);

/// Brent's method with bisection fallback. The returned x lies inside a
/// sign-change interval of width <= tol (or is an exact zero).
/// Throws Errc::no_sign_change if f_lo * f_hi > 0, Errc::max_iterations if the
/// interval does not shrink below tol within the iteration budget.
double find_root(const ScalarFn& f, const RootBracket& bracket, double tol);

/// Scans [lo, hi] in `steps` equal pieces and returns the first sub-interval
/// with a sign change. Throws Errc::bracket_failure if none is found.
RootBracket scan_bracket(const ScalarFn& f, double lo, double hi, int steps);

}  // namespace dgl
