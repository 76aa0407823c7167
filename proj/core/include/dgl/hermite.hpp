#pragma once

#include <span>
#include <vector>

namespace dgl {

/// Largest |t| accepted by the Hermite routines.
inline constexpr double kHermiteMaxArg = 30.0;

/// Real-order Hermite function H_nu(t): the solution of
/// y'' - 2t y' + 2 nu y = 0 that grows at most polynomially as t -> +inf,
/// normalized so that integer orders give the classical polynomials.
/// May overflow to +-inf for non-integer nu at very negative t (the function
/// grows like exp(t^2) there); use hermite_h_weighted in that regime.
/// Throws Errc::unsupported_range for |t| > 30.
double hermite_h(double nu, double t);

/// exp(-t^2/2) H_nu(t), evaluated without intermediate overflow.
double hermite_h_weighted(double nu, double t);

/// hermite_h_weighted at every point of `ts` (any order). Points on the
/// positive side share a single backward ODE sweep.
std::vector<double> hermite_h_weighted(double nu, std::span<const double> ts);

/// 1 / Gamma(x), zero at the poles of Gamma.
double rgamma(double x);

}  // namespace dgl
