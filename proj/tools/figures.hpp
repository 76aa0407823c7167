#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dgl::cli {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(std::string_view name) const;  // throws std::out_of_range
};

struct FigureOptions {
  std::size_t n = 0;  // 0: per-figure default node count
  unsigned threads = 0;
};

/// Data behind a named figure: mu1mu2, mu12prime, zetabound, whatweknow.
/// Throws Errc::unknown_figure for any other name.
Table figure_data(std::string_view name, const FigureOptions& opt = {});

/// Lower edge of the z-region left by 2(lambda - z^2) <= U(z, lambda) on
/// [sqrt(lambda/2), sqrt(lambda)], U the L^inf upper bound.
double zeta_region_lower(double lambda);

/// Header row, then one line per row with 12 significant digits.
void write_csv(std::ostream& os, const Table& t);
/// One JSON object per row.
void write_json_lines(std::ostream& os, const Table& t);

}  // namespace dgl::cli
