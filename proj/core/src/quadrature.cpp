#include "dgl/quadrature.hpp"

#include <string>

#include "dgl/error.hpp"

namespace dgl {

namespace {

void check_length(const GridSpec& grid, std::span<const double> samples) {
  if (samples.size() != grid.n)
    throw Error(Errc::length_mismatch, "expected " + std::to_string(grid.n) + " samples, got " +
                                           std::to_string(samples.size()));
}

}  // namespace

double quad(const GridSpec& grid, std::span<const double> samples) {
  check_length(grid, samples);
  double sum = 0.5 * (samples.front() + samples.back());
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) sum += samples[i];
  return sum * grid.step();
}

double quad_simpson(const GridSpec& grid, std::span<const double> samples) {
  check_length(grid, samples);
  const double h = grid.step();
  const std::size_t intervals = samples.size() - 1;
  std::size_t simpson_end = intervals;
  double tail = 0.0;
  if (intervals % 2 == 1) {
    if (intervals == 1) return 0.5 * h * (samples[0] + samples[1]);
    simpson_end = intervals - 3;
    const auto* s = samples.data() + simpson_end;
    tail = 3.0 * h / 8.0 * (s[0] + 3.0 * s[1] + 3.0 * s[2] + s[3]);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < simpson_end; i += 2)
    sum += samples[i] + 4.0 * samples[i + 1] + samples[i + 2];
  return sum * h / 3.0 + tail;
}

}  // namespace dgl
