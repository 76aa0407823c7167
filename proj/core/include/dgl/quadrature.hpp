#pragma once

#include <span>

#include "dgl/grid.hpp"

namespace dgl {

/// Composite trapezoidal rule over the grid nodes. Second order in the
/// spacing, exact for affine integrands. Its weights (h/2, h, ..., h, h/2)
/// are the mass matrix of the finite-difference operators used throughout,
/// so discrete energies and quadrature norms are mutually consistent.
/// Throws Errc::length_mismatch if samples.size() != grid.n.
double quad(const GridSpec& grid, std::span<const double> samples);

/// Composite Simpson rule (a 3/8 panel closes an odd interval count).
/// Fourth order; used where samples come from an analytic representation.
double quad_simpson(const GridSpec& grid, std::span<const double> samples);

}  // namespace dgl
