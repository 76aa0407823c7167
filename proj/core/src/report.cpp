#include "dgl/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace dgl {

double CertificateReport::at(std::string_view key) const {
  for (const auto& [k, v] : point)
    if (k == key) return v;
  return std::numeric_limits<double>::quiet_NaN();
}

CertificateReport make_report(std::string name, std::vector<std::pair<std::string, double>> point,
                              double margin, std::string detail) {
  CertificateReport r{std::move(name), std::move(point), margin, false, std::move(detail)};
  r.pass = margin >= -kPassTolerance;  // NaN fails
  return r;
}

CertificateReport make_equality(std::string name, std::vector<std::pair<std::string, double>> point,
                                double lhs, double rhs, double tol) {
  std::ostringstream os;
  os.precision(15);
  os << "lhs=" << lhs << " rhs=" << rhs << " tol=" << tol;
  return make_report(std::move(name), std::move(point), tol - std::fabs(lhs - rhs), os.str());
}

CertificateReport make_relative_equality(std::string name,
                                         std::vector<std::pair<std::string, double>> point,
                                         double lhs, double rhs, double rel_tol, double floor) {
  const double scale = std::max({std::fabs(lhs), std::fabs(rhs), floor});
  std::ostringstream os;
  os.precision(15);
  os << "lhs=" << lhs << " rhs=" << rhs << " rel_tol=" << rel_tol;
  return make_report(std::move(name), std::move(point), rel_tol * scale - std::fabs(lhs - rhs),
                     os.str());
}

bool all_pass(const std::vector<CertificateReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

namespace {

// NaN (absent) sorts first
double key(const CertificateReport& r, std::string_view k) {
  const double v = r.at(k);
  return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
}

}  // namespace

void sort_reports(std::vector<CertificateReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return std::tuple(a.name, key(a, "lambda"), key(a, "nu"), key(a, "zeta")) <
           std::tuple(b.name, key(b, "lambda"), key(b, "nu"), key(b, "zeta"));
  });
}

}  // namespace dgl
