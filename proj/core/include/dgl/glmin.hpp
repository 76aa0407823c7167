#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "dgl/degennes.hpp"
#include "dgl/grid.hpp"
#include "dgl/report.hpp"

namespace dgl {

/// Default node count for nonlinear profiles.
inline constexpr std::size_t kProfileNodes = 8001;

/// Non-negative minimizer of
///   F(f) = int |f'|^2 + (t - z)^2 f^2 + (lambda/2) f^4 - lambda f^2 dt
/// on the grid. Norms use the trapezoidal weights; `kinetic` is the
/// forward-difference Dirichlet energy, so energy = kinetic + potential
/// + lambda (l4^4 / 2 - l2^2) exactly.
struct MinimizerProfile {
  double z = 0.0;
  double lambda = 0.0;
  GridSpec grid;
  std::vector<double> f;
  double energy = 0.0;
  double l2 = 0.0;    // ||f||_2
  double l4 = 0.0;    // ||f||_4
  double linf = 0.0;  // max f
  double f0 = 0.0;
  double kinetic = 0.0;    // ||f'||^2
  double potential = 0.0;  // ||(t - z) f||^2
  double residual = 0.0;   // L2 norm of the discrete Euler-Lagrange residual
  double mu1_h = 0.0;      // discrete ground-state energy of h(z) on the grid
  int iterations = 0;

  bool trivial() const noexcept { return l2 == 0.0; }
  double l4_fourth() const noexcept { return l4 * l4 * l4 * l4; }
};

/// Damped Newton iteration on the discrete Euler-Lagrange equation
/// -f'' + (t - z)^2 f + lambda f^3 = lambda f with f >= 0, started from the
/// scaled ground state rho u_1(.; z) (or from `start` if non-empty), with an
/// energy line search. Returns f = 0 when lambda <= mu_1^h(z).
/// Requires lambda in (0, 1.2] and z in [-2, 4]; throws
/// Errc::convergence_failure if the residual does not drop below 1e-10.
MinimizerProfile minimize_functional(double z, double lambda, const GridSpec& grid,
                                     std::span<const double> start = {});

/// Default grid for minimizers around z.
GridSpec profile_grid(double z, std::size_t n = kProfileNodes);

/// Independent solution by shooting on f(0) with RK4 (step h): f(0) is the
/// boundary value separating solutions that cross zero from solutions that
/// turn upwards. Returns f(0) and the samples up to the point where the
/// shot leaves the decaying branch.
struct ShootingResult {
  double f0 = 0.0;
  std::vector<double> t;
  std::vector<double> f;
};
ShootingResult shoot_profile(double z, double lambda, double t_max, double h = 1e-3);

/// (1/2 + eps)-type Gaussian decay check for t >= z: the largest C(t)
/// = f(t) exp(rate (t - z)^2) over the sampled window, normalized by its
/// value at t0.
double decay_ratio(const MinimizerProfile& p, double rate, double t0, double t1);

/// A located minimum zeta(lambda) of z -> F_{z,lambda}(f_{z,lambda}).
struct ZetaRecord {
  double lambda = 0.0;
  double zeta = 0.0;
  MinimizerProfile profile;
  std::pair<double, double> bracket;
  std::vector<std::pair<double, double>> scan;  // (z, energy)
  std::vector<double> minima;  // all local minima within 1e-4 of the best energy
  bool multiple_minima = false;
};

/// Grid used by zeta(lambda): radius sqrt(lambda) + 10.1.
GridSpec zeta_grid(double lambda, std::size_t n = kProfileNodes);

/// Scan over [sqrt(lambda/2) - 0.1, sqrt(lambda) + 0.1] at step 0.02, Brent
/// refinement near the best scan point, then a root of the moment
/// int (t - z) f_z^2 dt (the z-derivative of the minimal energy, up to -2).
/// Requires Theta_0 < lambda <= 1.
ZetaRecord zeta(double lambda);
ZetaRecord zeta(double lambda, const GridSpec& grid);

/// int (t - z) f_{z,lambda}^2 dt on the profile.
double moment(const MinimizerProfile& p);

/// The six virial/energy identities at a stationary zeta (1e-5 relative),
/// plus zeta^2 <= lambda.
std::vector<CertificateReport> identity_suite(const ZetaRecord& rec);

/// Upper bound on lambda ||f_{z,lambda}||_inf^2 at a minimizing z, with
/// mu1_z = mu_1(z). Negative when the bound carries no information.
double linf_upper_bound(double lambda, double z, double mu1_z, const UniversalConstants& c);

/// L^inf, L^4, L^2 upper/lower bound chains for f_{zeta,lambda}.
std::vector<CertificateReport> norm_bounds(const ZetaRecord& rec, const UniversalConstants& c);

/// sqrt(lambda/2) <= zeta <= sqrt(lambda), zeta in J(lambda), zeta >= xi0.
std::vector<CertificateReport> zeta_bounds(const ZetaRecord& rec, const UniversalConstants& c);

/// H(t) = f'^2 - (t-z)^2 f^2 + lambda f^2 - (lambda/2) f^4 at t = 0 and the
/// value 2 int (t - z) f^2 it must equal for any z.
struct AuxiliaryCheck {
  double h0 = 0.0;
  double twice_moment = 0.0;
};
AuxiliaryCheck auxiliary_function(const MinimizerProfile& p);

/// E = (lambda/2) ||f_{zeta,lambda}||_4^4.
double surface_energy(double lambda);
double surface_energy(const ZetaRecord& rec);

/// Discrete EL residual -f'' + (t - z)^2 f + lambda f^3 - lambda f.
std::vector<double> euler_lagrange_residual(const MinimizerProfile& p);

/// "# key=value" metadata lines, a "t,f" header and 12-significant-digit rows.
void write_profile_csv(std::ostream& os, const MinimizerProfile& p);

}  // namespace dgl
