#pragma once

#include <cstddef>
#include <vector>

#include "dgl/degennes.hpp"
#include "dgl/glmin.hpp"
#include "dgl/report.hpp"

namespace dgl {

/// Low Neumann spectrum of k_lambda(nu) = -d^2/dt^2 + (t - nu)^2 + lambda f^2
/// with f taken on its own grid (no interpolation).
struct PerturbedSpectrum {
  double lambda = 0.0;
  double nu = 0.0;
  double zeta = 0.0;  // centre of the profile f
  GridSpec grid;
  std::vector<double> values;
  std::vector<double> v1;  // trapezoid-normalized, v1(0) > 0
  std::vector<double> residuals;

  double lambda1() const { return values.at(0); }
  double lambda2() const { return values.at(1); }
};

/// Spectrum for the profile of `rec`. Requires |rec.lambda - lambda| <= 1e-12,
/// lambda in [Theta_0, 1], nu in [-1, 8], k >= 1; throws Errc::grid_mismatch
/// if the grid radius is below nu + 8.
PerturbedSpectrum spectrum(double lambda, double nu, const ZetaRecord& rec, std::size_t k = 2);

/// Same operator with an arbitrary minimizer profile f_{z,lambda} (any
/// lambda accepted by minimize_functional).
PerturbedSpectrum spectrum_for_profile(const MinimizerProfile& p, double nu, std::size_t k = 2);

/// Smallest radius accepted for a given nu.
inline double required_radius(double nu) { return nu + 8.0; }

/// lambda + d^2 [1 - 4 ratio / (lambda2 - lambda - d^2)], d = nu - zeta,
/// ratio = ||(t - zeta) f||^2 / ||f||^2.
double temple_lower_bound(double lambda, double nu, double zeta, double ratio, double lambda2);

/// Certifies lambda_1(nu) >= temple bound. lambda_2 is replaced by the
/// smaller mu_2(nu) when `use_mu2` is set or when the computed gap to the
/// hypothesis threshold is below 1e-4. A failed hypothesis is a failed
/// report named "temple-hypothesis".
CertificateReport temple_bound(double lambda, double nu, const ZetaRecord& rec,
                               bool use_mu2 = false);

enum class LargeNuPart { i, ii };

/// Direct check lambda_1(nu) >= lambda - 1e-8 over the grids, plus the
/// numerator/gap sufficient conditions at zeta in {xi0, sqrt(lambda), zeta}.
/// Part i: nu <= 1.33. Part ii: lambda <= 0.8 and nu in J(lambda).
/// Points are distributed over `threads` workers; reports come back sorted.
std::vector<CertificateReport> certify_largenu(const std::vector<double>& lambda_grid,
                                               const std::vector<double>& nu_grid,
                                               LargeNuPart part, unsigned threads = 0);

/// Closed constants of the sufficient-condition argument.
struct ProofConstants {
  double margin_i = 0.0;   // at nu = 1.33, lambda = 1, zeta = xi0
  double margin_ii = 0.0;  // at nu = 1.5, lambda = 0.8, zeta = xi0
  double slope_i = 0.0;    // zeta-derivative lower bound, part i
  double slope_ii = 0.0;   // part ii
  double j_right_08 = 0.0; // root of mu_1(nu) = 0.8 right of xi0
};
ProofConstants proof_constants(const UniversalConstants& c);
std::vector<CertificateReport> proof_constant_reports(const UniversalConstants& c);

/// Quadratic growth lambda_1(nu) - lambda >= c (nu - zeta)^2 on 12 points
/// zeta +- 0.025 k (k = 1..6), c > 0; centered-difference stationarity
/// |lambda_1'(zeta)| <= 1e-4; lambda_1(zeta) = lambda +- 1e-6.
std::vector<CertificateReport> certify_local_minimum(const ZetaRecord& rec, unsigned threads = 0);
std::vector<CertificateReport> certify_local_minimum(double lambda, unsigned threads = 0);

/// Centered difference of lambda_1 at nu with step delta.
double lambda1_derivative(const ZetaRecord& rec, double nu, double delta = 1e-3);

/// Identities at a stationary point nu0 of lambda_1; throws
/// Errc::not_stationary if |lambda_1'(nu0)| > 1e-4.
std::vector<CertificateReport> stationary_identities(double lambda, double nu0,
                                                     const ZetaRecord& rec);

/// Eigenvalue sandwich mu_j <= lambda_j <= mu_j + (bounds), and
/// lambda_1 >= lambda outside J(lambda).
std::vector<CertificateReport> sandwich(double lambda, double nu, const ZetaRecord& rec,
                                        const UniversalConstants& c);

/// lambda_1(nu; z) for a fixed profile at each nu (any lambda the
/// minimizer accepts, including lambda > 1).
std::vector<double> lambda1_curve(const MinimizerProfile& p, const std::vector<double>& nus,
                                  unsigned threads = 0);

/// Record on a grid wide enough for nu up to 9 (radius 17).
ZetaRecord far_field_record(double lambda);

/// lambda_1(nu) within 0.05 of 1 and above lambda at each nu; the
/// "far-field-above-one" entry removes the common discretization error of
/// the unperturbed operator before comparing with 1.
std::vector<CertificateReport> far_field(const ZetaRecord& wide, const std::vector<double>& nus,
                                         unsigned threads = 0);

}  // namespace dgl
