#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dgl {

/// Eigenpairs of a symmetric tridiagonal matrix. `residuals[i]` is
/// ||T v - lambda v|| / (||v|| max(1, ||T||_inf)); for well-scaled matrices
/// this is the plain relative residual, for discretized differential
/// operators it removes the unavoidable eps * ||T|| floor.
struct TridiagEigen {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
  std::vector<double> residuals;
};

/// k smallest eigenvalues (ascending) of the symmetric tridiagonal matrix
/// with the given diagonal and off-diagonal (offdiag.size() == diag.size()-1).
/// Sturm-sequence bisection; throws Errc::convergence_failure on breakdown.
std::vector<double> eig_tridiag(std::span<const double> diag, std::span<const double> offdiag,
                                std::size_t k);

/// As eig_tridiag, plus unit eigenvectors by inverse iteration.
TridiagEigen eig_tridiag_vectors(std::span<const double> diag, std::span<const double> offdiag,
                                 std::size_t k);

/// Number of eigenvalues strictly below x.
std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag, double x);

/// Diagonal similarity S = D A D^{-1} turning a tridiagonal A with
/// sub[i] * super[i] > 0 into a symmetric one. Eigenvectors map back as
/// x = D^{-1} y, i.e. x[i] = y[i] / scale[i].
struct SymmetrizedTridiag {
  std::vector<double> diag;
  std::vector<double> offdiag;
  std::vector<double> scale;
};
SymmetrizedTridiag symmetrize(std::span<const double> sub, std::span<const double> diag,
                              std::span<const double> super);

/// Solves a general tridiagonal system with partial pivoting.
/// Returns false if the matrix is numerically singular.
bool solve_tridiag(std::span<const double> sub, std::span<const double> diag,
                   std::span<const double> super, std::span<double> rhs);

}  // namespace dgl
