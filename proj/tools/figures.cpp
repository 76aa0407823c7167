#include "figures.hpp"

#include <cmath>
#include <locale>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "dgl/degennes.hpp"
#include "dgl/error.hpp"
#include "dgl/glmin.hpp"
#include "dgl/parallel.hpp"
#include "dgl/perturbed.hpp"
#include "dgl/roots.hpp"

namespace dgl::cli {

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw std::out_of_range("no column " + std::string(name));
}

namespace {

std::vector<double> xi_axis() {
  std::vector<double> xs;
  for (int i = 0; i <= 300; ++i) xs.push_back(i / 100.0);
  return xs;
}

Table mu1mu2(unsigned threads) {
  const auto xs = xi_axis();
  const auto rows = parallel_map<std::vector<double>>(
      xs.size(),
      [&](std::size_t i) {
        return std::vector<double>{xs[i], mu_value(1, xs[i]), mu_value(2, xs[i])};
      },
      threads);
  return {{"xi", "mu1", "mu2"}, rows};
}

Table mu12prime(unsigned threads) {
  const auto xs = xi_axis();
  const auto rows = parallel_map<std::vector<double>>(
      xs.size(),
      [&](std::size_t i) {
        return std::vector<double>{xs[i], mu_prime(1, xs[i]), mu_prime(2, xs[i])};
      },
      threads);
  return {{"xi", "mu1_prime", "mu2_prime"}, rows};
}

Table zetabound(const FigureOptions& opt) {
  const auto& c = universal_constants();
  // Theta_0 itself, then the 0.005 lattice inside (Theta_0, 1]
  std::vector<double> lams{c.theta0};
  for (int k = 1; k <= 200; ++k)
    if (k * 0.005 > c.theta0) lams.push_back(k * 0.005);
  const std::size_t n = opt.n ? opt.n : 2001;
  const auto rows = parallel_map<std::vector<double>>(
      lams.size(),
      [&](std::size_t i) {
        const double lam = lams[i];
        double z = c.xi0, lo = c.xi0;
        if (i > 0) {
          z = zeta(lam, zeta_grid(lam, n)).zeta;
          lo = j_interval(lam).lo;
        }
        return std::vector<double>{lam, std::sqrt(lam / 2.0), zeta_region_lower(lam),
                                   std::sqrt(lam), lo, z, mu_value(1, z)};
      },
      opt.threads);
  return {{"lambda", "sqrt_half_lambda", "region_lower", "upper", "j_lower", "zeta", "mu1_zeta"}, rows};
}

Table whatweknow(const FigureOptions& opt) {
  const std::size_t n = opt.n ? opt.n : kProfileNodes;
  std::vector<double> nus;
  for (int i = 0; i <= 400; ++i) nus.push_back(i / 100.0);
  const GridSpec grid = GridSpec::uniform(required_radius(nus.back()) + 0.5, n);

  struct Curve {
    double lambda, z;
    std::vector<double> l1;
  };
  std::vector<Curve> curves;
  for (double lam : {0.7, 0.8}) {
    const ZetaRecord rec = zeta(lam, grid);
    curves.push_back({lam, rec.zeta, lambda1_curve(rec.profile, nus, opt.threads)});
  }
  // lambda above 1 with a fixed profile at z = 1
  const MinimizerProfile p = minimize_functional(1.0, 1.1, grid);
  curves.push_back({1.1, 1.0, lambda1_curve(p, nus, opt.threads)});

  const auto mu1 = parallel_map<double>(
      nus.size(), [&](std::size_t i) { return mu_value(1, nus[i]); }, opt.threads);
  Table t{{"lambda", "z", "nu", "lambda1", "mu1"}, {}};
  for (const Curve& cv : curves)
    for (std::size_t i = 0; i < nus.size(); ++i)
      t.rows.push_back({cv.lambda, cv.z, nus[i], cv.l1[i], mu1[i]});
  return t;
}

}  // namespace

double zeta_region_lower(double lambda) {
  const auto& c = universal_constants();
  if (lambda <= c.theta0) return c.xi0;
  auto g = [&](double z) {
    return 2.0 * (lambda - z * z) - linf_upper_bound(lambda, z, mu_value(1, z), c);
  };
  const double a = std::sqrt(lambda / 2.0), b = std::sqrt(lambda);
  if (g(a) <= 0.0) return a;
  constexpr int kSteps = 50;
  double prev = a;
  for (int k = 1; k <= kSteps; ++k) {
    const double z = a + (b - a) * k / kSteps;
    if (g(z) <= 0.0) {
      const auto br = make_bracket(g, prev, z);
      return find_root(g, br, 1e-12);
    }
    prev = z;
  }
  return b;
}

Table figure_data(std::string_view name, const FigureOptions& opt) {
  if (name == "mu1mu2") return mu1mu2(opt.threads);
  if (name == "mu12prime") return mu12prime(opt.threads);
  if (name == "zetabound") return zetabound(opt);
  if (name == "whatweknow") return whatweknow(opt);
  throw Error(Errc::unknown_figure, std::string(name));
}

void write_csv(std::ostream& os, const Table& t) {
  std::ostringstream buf;
  buf.imbue(std::locale::classic());
  buf.precision(12);
  for (std::size_t i = 0; i < t.columns.size(); ++i) buf << (i ? "," : "") << t.columns[i];
  buf << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) buf << (i ? "," : "") << row[i];
    buf << '\n';
  }
  os << buf.str();
}

void write_json_lines(std::ostream& os, const Table& t) {
  for (const auto& row : t.rows) {
    nlohmann::ordered_json j;
    for (std::size_t i = 0; i < row.size(); ++i) j[t.columns[i]] = row[i];
    os << j.dump() << '\n';
  }
}

}  // namespace dgl::cli
