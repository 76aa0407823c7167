#include "dgl/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "dgl/error.hpp"

namespace dgl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_shape(std::span<const double> diag, std::span<const double> offdiag, std::size_t k) {
  if (diag.empty()) throw std::invalid_argument("eig_tridiag: empty matrix");
  if (offdiag.size() + 1 != diag.size())
    throw Error(Errc::length_mismatch, "eig_tridiag: offdiag must have n-1 entries");
  if (k > diag.size()) throw std::invalid_argument("eig_tridiag: k exceeds matrix size");
}

double norm_inf(std::span<const double> diag, std::span<const double> offdiag) {
  double norm = 0.0;
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::fabs(diag[i]);
    if (i > 0) row += std::fabs(offdiag[i - 1]);
    if (i + 1 < n) row += std::fabs(offdiag[i]);
    norm = std::max(norm, row);
  }
  return norm;
}

struct Sturm {
  std::span<const double> diag;
  std::vector<double> off2;
  double pivmin;

  Sturm(std::span<const double> d, std::span<const double> e) : diag(d), off2(e.size()) {
    double max_e2 = 1.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      off2[i] = e[i] * e[i];
      max_e2 = std::max(max_e2, off2[i]);
    }
    pivmin = std::numeric_limits<double>::min() * max_e2;
  }

  std::size_t count(double x) const {
    std::size_t negatives = 0;
    double q = diag[0] - x;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++negatives;
    for (std::size_t i = 1; i < diag.size(); ++i) {
      q = diag[i] - x - off2[i - 1] / q;
      if (std::fabs(q) < pivmin) q = -pivmin;
      if (q < 0.0) ++negatives;
    }
    return negatives;
  }
};

std::vector<double> bisect_smallest(std::span<const double> diag, std::span<const double> offdiag,
                                    std::size_t k) {
  const std::size_t n = diag.size();
  const Sturm sturm(diag, offdiag);
  double glo = diag[0], ghi = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::fabs(offdiag[i - 1]);
    if (i + 1 < n) r += std::fabs(offdiag[i]);
    glo = std::min(glo, diag[i] - r);
    ghi = std::max(ghi, diag[i] + r);
  }
  const double slack = 2.0 * kEps * std::max(std::fabs(glo), std::fabs(ghi)) + sturm.pivmin;
  glo -= slack;
  ghi += slack;

  std::vector<double> values(k);
  double floor = glo;
  for (std::size_t idx = 0; idx < k; ++idx) {
    double lo = floor, hi;
    // grow an upper bracket from the lower end; cheaper than starting at ghi
    // for the low end of a wide spectrum
    double width = std::max(1.0, std::fabs(lo) * 1e-3);
    hi = lo + width;
    while (hi < ghi && sturm.count(hi) <= idx) {
      lo = hi;
      width *= 4.0;
      hi = std::min(ghi, hi + width);
    }
    if (hi >= ghi) hi = ghi;
    int iter = 0;
    while (true) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (hi - lo <= 2.0 * kEps * std::max(std::fabs(lo), std::fabs(hi)) + sturm.pivmin) break;
      if (sturm.count(mid) > idx) hi = mid; else lo = mid;
      if (++iter > 400) throw Error(Errc::convergence_failure, "eig_tridiag: bisection stalled");
    }
    values[idx] = 0.5 * (lo + hi);
    floor = lo;
  }
  return values;
}

}  // namespace

std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag, double x) {
  check_shape(diag, offdiag, 0);
  return Sturm(diag, offdiag).count(x);
}

std::vector<double> eig_tridiag(std::span<const double> diag, std::span<const double> offdiag,
                                std::size_t k) {
  check_shape(diag, offdiag, k);
  if (k == 0) return {};
  return bisect_smallest(diag, offdiag, k);
}

bool solve_tridiag(std::span<const double> sub, std::span<const double> diag,
                   std::span<const double> super, std::span<double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0) return true;
  if (sub.size() + 1 != n || super.size() + 1 != n || rhs.size() != n)
    throw Error(Errc::length_mismatch, "solve_tridiag: inconsistent sizes");
  // LU with partial pivoting (LAPACK gttrf/gttrs layout)
  std::vector<double> dl(sub.begin(), sub.end());
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> du(super.begin(), super.end());
  std::vector<double> du2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<std::uint8_t> swapped(n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::fabs(d[i]) >= std::fabs(dl[i])) {
      if (d[i] == 0.0) return false;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  if (d[n - 1] == 0.0) return false;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (swapped[i]) {
      const double temp = rhs[i];
      rhs[i] = rhs[i + 1];
      rhs[i + 1] = temp - dl[i] * rhs[i + 1];
    } else {
      rhs[i + 1] -= dl[i] * rhs[i];
    }
  }
  rhs[n - 1] /= d[n - 1];
  if (n > 1) rhs[n - 2] = (rhs[n - 2] - du[n - 2] * rhs[n - 1]) / d[n - 2];
  for (std::size_t i = n > 2 ? n - 2 : 0; i-- > 0;)
    rhs[i] = (rhs[i] - du[i] * rhs[i + 1] - du2[i] * rhs[i + 2]) / d[i];
  return true;
}

TridiagEigen eig_tridiag_vectors(std::span<const double> diag, std::span<const double> offdiag,
                                 std::size_t k) {
  check_shape(diag, offdiag, k);
  TridiagEigen out;
  if (k == 0) return out;
  out.values = bisect_smallest(diag, offdiag, k);
  const std::size_t n = diag.size();
  const double tnorm = std::max(1.0, norm_inf(diag, offdiag));

  std::vector<double> shifted(n);
  for (std::size_t idx = 0; idx < k; ++idx) {
    const double lambda = out.values[idx];
    for (std::size_t i = 0; i < n; ++i) shifted[i] = diag[i] - lambda;
    // deterministic pseudo-random start vector
    std::vector<double> x(n);
    std::uint64_t state = 0x9E3779B97F4A7C15ULL + idx;
    for (auto& xi : x) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      xi = 0.5 + static_cast<double>(state >> 11) * 0x1.0p-53;
    }
    for (int sweep = 0; sweep < 4; ++sweep) {
      if (!solve_tridiag(offdiag, shifted, offdiag, x)) {
        // exact singularity: nudge the shift by one ulp of the spectrum scale
        for (std::size_t i = 0; i < n; ++i) shifted[i] = diag[i] - lambda - kEps * tnorm;
        if (!solve_tridiag(offdiag, shifted, offdiag, x))
          throw Error(Errc::convergence_failure, "inverse iteration: singular system");
      }
      // keep clustered vectors orthogonal
      for (std::size_t prev = 0; prev < idx; ++prev) {
        if (std::fabs(out.values[prev] - lambda) > 1e-6 * tnorm) continue;
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += x[i] * out.vectors[prev][i];
        for (std::size_t i = 0; i < n; ++i) x[i] -= dot * out.vectors[prev][i];
      }
      double norm = 0.0;
      for (double xi : x) norm += xi * xi;
      norm = std::sqrt(norm);
      if (!(norm > 0.0) || !std::isfinite(norm))
        throw Error(Errc::convergence_failure, "inverse iteration: degenerate iterate");
      for (auto& xi : x) xi /= norm;
    }
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = (diag[i] - lambda) * x[i];
      if (i > 0) r += offdiag[i - 1] * x[i - 1];
      if (i + 1 < n) r += offdiag[i] * x[i + 1];
      res += r * r;
    }
    out.residuals.push_back(std::sqrt(res) / tnorm);
    out.vectors.push_back(std::move(x));
  }
  return out;
}

SymmetrizedTridiag symmetrize(std::span<const double> sub, std::span<const double> diag,
                              std::span<const double> super) {
  const std::size_t n = diag.size();
  if (sub.size() + 1 != n || super.size() + 1 != n)
    throw Error(Errc::length_mismatch, "symmetrize: inconsistent sizes");
  SymmetrizedTridiag s{{diag.begin(), diag.end()}, std::vector<double>(n - 1), std::vector<double>(n)};
  s.scale[0] = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double prod = sub[i] * super[i];
    if (!(prod > 0.0))
      throw std::invalid_argument("symmetrize: off-diagonal products must be positive");
    s.offdiag[i] = std::copysign(std::sqrt(prod), super[i]);
    s.scale[i + 1] = s.scale[i] * std::sqrt(super[i] / sub[i]);
  }
  return s;
}

}  // namespace dgl
