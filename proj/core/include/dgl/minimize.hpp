#pragma once

#include "dgl/roots.hpp"

namespace dgl {

struct MinimumResult {
  double x = 0.0;
  double fx = 0.0;
};

/// Golden-section search with parabolic acceleration (Brent) on [lo, hi].
/// The caller guarantees unimodality. The abscissa is resolved to
/// max(tol, sqrt(eps)|x|); the endpoints are compared at the end so that
/// fx <= f(lo) and fx <= f(hi) always hold.
/// Throws Errc::max_iterations when the iteration budget is exhausted.
MinimumResult minimize_1d(const ScalarFn& f, double lo, double hi, double tol);

}  // namespace dgl
