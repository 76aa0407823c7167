#pragma once

#include <cstddef>
#include <vector>

namespace dgl {

enum class Spacing { uniform };

/// Truncated half-line [0, t_max] sampled at n nodes; node 0 is t = 0 and
/// node n-1 is t = t_max.
struct GridSpec {
  double t_max = 0.0;
  std::size_t n = 0;
  Spacing spacing = Spacing::uniform;

  /// Validating constructor; throws std::invalid_argument unless t_max > 0, n >= 3.
  static GridSpec uniform(double t_max, std::size_t n);

  /// Default discretization for a problem whose features sit near `center`:
  /// radius max(center, 0) + 10 with 4001 nodes.
  static GridSpec around(double center, std::size_t n = 4001);

  double step() const noexcept { return t_max / static_cast<double>(n - 1); }
  double node(std::size_t i) const noexcept {
    return i + 1 == n ? t_max : static_cast<double>(i) * step();
  }
  std::vector<double> nodes() const;

  /// Halved spacing on the same interval (2n-1 nodes); even nodes coincide
  /// with the nodes of *this.
  GridSpec refined() const noexcept { return {t_max, 2 * n - 1, spacing}; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

}  // namespace dgl
