#include "dgl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dgl {

GridSpec GridSpec::uniform(double t_max, std::size_t n) {
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw std::invalid_argument("GridSpec: t_max must be positive and finite");
  if (n < 3) throw std::invalid_argument("GridSpec: need at least 3 nodes");
  return {t_max, n, Spacing::uniform};
}

GridSpec GridSpec::around(double center, std::size_t n) {
  return uniform(std::max(center, 0.0) + 10.0, n);
}

std::vector<double> GridSpec::nodes() const {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = node(i);
  return t;
}

}  // namespace dgl
