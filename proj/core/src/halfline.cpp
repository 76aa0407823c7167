#include "dgl/halfline.hpp"

#include <cmath>

#include "dgl/error.hpp"
#include "dgl/tridiag.hpp"

namespace dgl {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

void check_potential(const GridSpec& grid, std::span<const double> potential) {
  if (potential.size() != grid.n)
    throw Error(Errc::length_mismatch, "potential must be sampled at every grid node");
}

// symmetric form on nodes 0..n-2, unknown y0 = u0 / sqrt(2)
void neumann_matrix(const GridSpec& grid, std::span<const double> potential,
                    std::vector<double>& diag, std::vector<double>& off) {
  check_potential(grid, potential);
  const std::size_t m = grid.n - 1;
  const double h2 = 1.0 / (grid.step() * grid.step());
  diag.resize(m);
  off.assign(m - 1, -h2);
  for (std::size_t i = 0; i < m; ++i) diag[i] = 2.0 * h2 + potential[i];
  if (m > 1) off[0] = -kSqrt2 * h2;
}

}  // namespace

GridEigen neumann_eigen(const GridSpec& grid, std::span<const double> potential, std::size_t k) {
  std::vector<double> diag, off;
  neumann_matrix(grid, potential, diag, off);
  TridiagEigen te = eig_tridiag_vectors(diag, off, k);
  GridEigen out{std::move(te.values), {}, std::move(te.residuals)};
  const double h = grid.step();
  for (auto& y : te.vectors) {
    std::vector<double> u(grid.n, 0.0);
    u[0] = kSqrt2 * y[0];
    for (std::size_t i = 1; i < y.size(); ++i) u[i] = y[i];
    // trapezoid norm of u equals h * |y|^2 = h
    const double scale = 1.0 / std::sqrt(h);
    double lead = 0.0;
    for (double v : u) {
      if (std::fabs(v) > 1e-8) {
        lead = v;
        break;
      }
    }
    const double sgn = lead < 0.0 ? -scale : scale;
    for (auto& v : u) v *= sgn;
    out.vectors.push_back(std::move(u));
  }
  return out;
}

std::vector<double> neumann_eigenvalues(const GridSpec& grid, std::span<const double> potential,
                                        std::size_t k) {
  std::vector<double> diag, off;
  neumann_matrix(grid, potential, diag, off);
  return eig_tridiag(diag, off, k);
}

std::vector<double> dirichlet_eigenvalues(const GridSpec& grid, std::span<const double> potential,
                                          std::size_t k) {
  check_potential(grid, potential);
  const std::size_t m = grid.n - 2;
  const double h2 = 1.0 / (grid.step() * grid.step());
  std::vector<double> diag(m), off(m - 1, -h2);
  for (std::size_t i = 0; i < m; ++i) diag[i] = 2.0 * h2 + potential[i + 1];
  return eig_tridiag(diag, off, k);
}

void apply_neumann(const GridSpec& grid, std::span<const double> potential,
                   std::span<const double> u, std::span<double> out) {
  check_potential(grid, potential);
  if (u.size() != grid.n || out.size() != grid.n)
    throw Error(Errc::length_mismatch, "apply_neumann: vector length must equal grid.n");
  const std::size_t n = grid.n;
  const double h2 = 1.0 / (grid.step() * grid.step());
  out[0] = 2.0 * h2 * (u[0] - u[1]) + potential[0] * u[0];
  for (std::size_t i = 1; i + 1 < n; ++i)
    out[i] = h2 * (2.0 * u[i] - u[i - 1] - u[i + 1]) + potential[i] * u[i];
  out[n - 1] = 0.0;
}

std::vector<double> shifted_harmonic(const GridSpec& grid, double center) {
  std::vector<double> v(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double s = grid.node(i) - center;
    v[i] = s * s;
  }
  return v;
}

double boundary_derivative(const GridSpec& grid, std::span<const double> u) {
  if (u.size() != grid.n) throw Error(Errc::length_mismatch, "boundary_derivative");
  if (grid.n < 5) return (u[1] - u[0]) / grid.step();
  return (-25.0 * u[0] + 48.0 * u[1] - 36.0 * u[2] + 16.0 * u[3] - 3.0 * u[4]) /
         (12.0 * grid.step());
}

std::vector<double> derivative(const GridSpec& grid, std::span<const double> u) {
  const std::size_t n = grid.n;
  if (u.size() != n) throw Error(Errc::length_mismatch, "derivative");
  const double h = grid.step();
  std::vector<double> d(n);
  if (n < 5) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = i == 0 ? 0 : i - 1, b = i + 1 == n ? i : i + 1;
      d[i] = (u[b] - u[a]) / (static_cast<double>(b - a) * h);
    }
    return d;
  }
  const double c = 1.0 / (12.0 * h);
  d[0] = c * (-25.0 * u[0] + 48.0 * u[1] - 36.0 * u[2] + 16.0 * u[3] - 3.0 * u[4]);
  d[1] = c * (-3.0 * u[0] - 10.0 * u[1] + 18.0 * u[2] - 6.0 * u[3] + u[4]);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = c * (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]);
  d[n - 2] = c * (3.0 * u[n - 1] + 10.0 * u[n - 2] - 18.0 * u[n - 3] + 6.0 * u[n - 4] - u[n - 5]);
  d[n - 1] = c * (25.0 * u[n - 1] - 48.0 * u[n - 2] + 36.0 * u[n - 3] - 16.0 * u[n - 4] +
                  3.0 * u[n - 5]);
  return d;
}

}  // namespace dgl
