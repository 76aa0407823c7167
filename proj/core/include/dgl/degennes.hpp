#pragma once

#include <vector>

#include "dgl/grid.hpp"
#include "dgl/report.hpp"

namespace dgl {

enum class Method { characteristic, finite_difference };

/// j-th Neumann eigenpair of h(xi) = -d^2/dt^2 + (t - xi)^2 on the half-line.
/// u is sampled on `grid`, L2-normalized (composite Simpson) with u(0) > 0.
/// residual: relative residual of the characteristic equation, or the
/// tridiagonal eigen-residual for the finite-difference backend.
struct EigenResult {
  int j = 1;
  double xi = 0.0;
  double mu = 0.0;
  GridSpec grid;
  std::vector<double> u;
  Method method = Method::characteristic;
  double residual = 0.0;
};

/// Requires j in {1, 2, 3} and |xi| <= 10 (std::invalid_argument otherwise).
/// Grid defaults to GridSpec::around(xi).
EigenResult mu(int j, double xi, Method method = Method::characteristic);
EigenResult mu(int j, double xi, Method method, const GridSpec& grid);

/// Eigenvalue only; skips sampling the eigenfunction.
double mu_value(int j, double xi, Method method = Method::characteristic);

/// Finite-difference eigenvalues 1..k on `grid` and its refinement,
/// Richardson-extrapolated.
std::vector<double> mu_fd(double xi, int k, const GridSpec& grid);

/// exp(-xi^2/2) [(mu-1) H_{(mu-3)/2}(-xi) + xi H_{(mu-1)/2}(-xi)];
/// its zeros in mu are the Neumann eigenvalues of h(xi).
double characteristic_function(double mu, double xi);

/// mu_j'(xi) = (xi^2 - mu_j) u_j(0)^2.
double mu_prime(int j, double xi);
/// mu_j'(xi) = -2 int (t - xi) u_j^2 dt.
double mu_prime_feynman(int j, double xi);

/// j-th Dirichlet eigenvalue of h(xi) (finite differences, extrapolated).
double dirichlet_mu(int j, double xi);

struct UniversalConstants {
  double theta0 = 0.0;
  double xi0 = 0.0;
  double xi0_2 = 0.0;
  double xi0_3 = 0.0;
  double mu2_min = 0.0;  // mu_2(xi0_2)
  double mu3_min = 0.0;  // mu_3(xi0_3)
  double xi_hat_2 = 0.0;
  double xi_hat_3 = 0.0;
  double u1_l4_fourth = 0.0;  // ||u_1(.; xi0)||_4^4
};

/// Computed once and cached; thread-safe.
const UniversalConstants& universal_constants();
UniversalConstants compute_universal_constants();

/// Closed-form and parametric lower bounds on the low Neumann spectrum,
/// each checked against `c`. Throws Errc::bound_violated if any fails.
std::vector<CertificateReport> analytic_lower_bounds(const UniversalConstants& c);
std::vector<CertificateReport> analytic_lower_bounds();

/// Kinetic/potential split of mu_j.
struct VirialCheck {
  double kinetic = 0.0;        // int |u'|^2
  double potential = 0.0;      // int (t - xi)^2 u^2
  double kinetic_rhs = 0.0;    // mu/2 - xi mu'/4
  double potential_rhs = 0.0;  // mu/2 + xi mu'/4
  double kinetic_error = 0.0;
  double potential_error = 0.0;
};
VirialCheck virial_check(int j, double xi);

struct AsymptoticCheck {
  double sup_deviation = 0.0;  // sup |u_1 - pi^{-1/4} exp(-(t-xi)^2/2)|
  double l2_distance = 0.0;
  double mu_gap = 0.0;         // |mu_1(xi) - 1|
  double observed_prefactor = 0.0;  // u_1(xi; xi)
};
/// Requires xi >= 3.
AsymptoticCheck asymptotic_check(double xi);

/// |mu_1(xi) - 1| resolved to relative precision even when it is far below
/// machine epsilon (xi > 0).
double mu_gap(double xi);

/// {xi : mu_1(xi) < lambda} = (lo, hi); hi = +inf for lambda >= 1.
/// Requires lambda > Theta_0.
struct JInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double xi) const noexcept { return lo < xi && xi < hi; }
};
JInterval j_interval(double lambda);

}  // namespace dgl
