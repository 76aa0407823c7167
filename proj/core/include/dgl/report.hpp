#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dgl {

inline constexpr double kPassTolerance = 1e-9;

/// Outcome of one named inequality or identity at one parameter point.
/// margin >= 0 means the statement holds; pass <=> margin >= -1e-9.
struct CertificateReport {
  std::string name;
  std::vector<std::pair<std::string, double>> point;
  double margin = 0.0;
  bool pass = false;
  std::string detail;

  /// Value of a point coordinate, NaN if absent.
  double at(std::string_view key) const;
};

CertificateReport make_report(std::string name, std::vector<std::pair<std::string, double>> point,
                              double margin, std::string detail = {});

/// margin = tol - |lhs - rhs|, so equalities fit the same pass rule.
CertificateReport make_equality(std::string name, std::vector<std::pair<std::string, double>> point,
                                double lhs, double rhs, double tol);

/// margin = rel_tol * max(|lhs|, |rhs|, floor) - |lhs - rhs|.
CertificateReport make_relative_equality(std::string name,
                                         std::vector<std::pair<std::string, double>> point,
                                         double lhs, double rhs, double rel_tol,
                                         double floor = 1.0);

bool all_pass(const std::vector<CertificateReport>& reports);

/// Stable order by (name, lambda, nu, zeta, remaining coordinates).
void sort_reports(std::vector<CertificateReport>& reports);

}  // namespace dgl
