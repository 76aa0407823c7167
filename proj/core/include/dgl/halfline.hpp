#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dgl/grid.hpp"

namespace dgl {

/// Low eigenpairs of a discretized Schroedinger operator -u'' + V u on the
/// grid. Vectors hold all n node values (the last node carries the
/// truncation zero), are normalized in the trapezoidal L2 norm and signed
/// so that the first non-negligible entry is positive.
struct GridEigen {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
  std::vector<double> residuals;
};

/// Neumann condition u'(0) = 0 by a mirrored ghost node, u(t_max) = 0.
/// The scheme is second order; the symmetrized matrix has the trapezoidal
/// weights as mass matrix.
GridEigen neumann_eigen(const GridSpec& grid, std::span<const double> potential, std::size_t k);
std::vector<double> neumann_eigenvalues(const GridSpec& grid, std::span<const double> potential,
                                        std::size_t k);

/// u(0) = u(t_max) = 0.
std::vector<double> dirichlet_eigenvalues(const GridSpec& grid, std::span<const double> potential,
                                          std::size_t k);

/// (-u'' + V u) at every node except the last, with the ghost-node
/// Neumann stencil at node 0; out has n entries and out[n-1] = 0.
void apply_neumann(const GridSpec& grid, std::span<const double> potential,
                   std::span<const double> u, std::span<double> out);

/// Samples (t - center)^2 at the grid nodes.
std::vector<double> shifted_harmonic(const GridSpec& grid, double center);

/// Fourth-order one-sided estimate of u'(0).
double boundary_derivative(const GridSpec& grid, std::span<const double> u);

/// Fourth-order centered first derivative (one-sided near the ends).
std::vector<double> derivative(const GridSpec& grid, std::span<const double> u);

/// Richardson combination (4 fine - coarse) / 3 for second-order schemes.
inline double richardson(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

}  // namespace dgl
