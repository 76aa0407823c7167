#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "figures.hpp"

using namespace dgl::cli;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dgl_test_" + name);
}

}  // namespace

TEST_CASE("grid grammar") {
  const auto g = parse_grid("0:1.33:0.05");
  CHECK(g.size() == 27);
  CHECK(g.back() == 1.3);
  const auto l = parse_grid("0.60:1.0:0.05");
  REQUIRE(l.size() == 9);
  CHECK(l.front() == 0.6);
  CHECK(l.back() == 1.0);
  CHECK(l[3] == 0.75);
  CHECK(parse_grid("0.8,1.0") == std::vector<double>{0.8, 1.0});
  CHECK(parse_grid("-0.5") == std::vector<double>{-0.5});
  CHECK_THROWS_AS(parse_grid("1:0:0.1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1e-3"), std::invalid_argument);
}

TEST_CASE("theta0 prints the constants") {
  const Result r = run_cli({"theta0", "--digits", "8"});
  CHECK(r.code == 0);
  CHECK(r.out.find("theta0 = 0.59010612") != std::string::npos);
  CHECK(r.out.find("xi0 = 0.76818365") != std::string::npos);
  CHECK(r.out.find("u1_l4_fourth = 0.584") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"nonsense"}).code == 2);
  CHECK(run_cli({"mu", "--bogus", "1"}).code == 2);
  CHECK(run_cli({"mu"}).code == 2);
  CHECK(run_cli({"mu", "--nu", "nan"}).code == 2);
  CHECK(run_cli({"mu", "--nu", "0.5", "--j", "7"}).code == 2);
  CHECK(run_cli({"figure", "--name", "nope"}).code == 2);
  CHECK(run_cli({"certify", "--theorem", "nope"}).code == 2);
  CHECK(run_cli({"certify", "--theorem", "largenu-i", "--lambda-grid", "1:0.6:0.05"}).code == 2);
  CHECK(run_cli({"spectrum", "--lambda", "0.8", "--nu", "6", "--tmax", "11"}).code == 2);
  const Result r = run_cli({"zeta"});
  CHECK(r.err == "dgl: --lambda is required\n");
}

TEST_CASE("mu cross-check with a tolerance") {
  const Result ok = run_cli({"mu", "--nu", "0", "--j", "2", "--tol", "1e-6"});
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("mu_2(0) = 5", 0) == 0);
  const Result json = run_cli({"mu", "--nu", "1", "--j", "2", "--format", "json"});
  CHECK(json.out.find("\"mu\":3.0") != std::string::npos);
}

TEST_CASE("certify exits 0 on a passing sweep and writes json lines") {
  const Result r = run_cli({"certify", "--theorem", "largenu-i", "--lambda-grid", "0.7,0.9", "--nu-grid",
                            "0:1.2:0.4"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    CHECK(line.front() == '{');
    CHECK(line.find("\"pass\":true") != std::string::npos);
    ++count;
  }
  CHECK(count > 10);
  CHECK(r.err.find("0 failed") != std::string::npos);
}

TEST_CASE("identities certificate as csv") {
  const Result r = run_cli({"certify", "--theorem", "identities", "--lambda", "0.8", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("name,lambda,nu,zeta,j,margin,pass\n", 0) == 0);
  CHECK(r.out.find("moment-condition,0.8,") != std::string::npos);
}

TEST_CASE("figure output is atomic and deterministic") {
  const auto a = scratch("mu1mu2_a.csv"), b = scratch("mu1mu2_b.csv");
  CHECK(run_cli({"figure", "--name", "mu1mu2", "--out", a.string()}).code == 0);
  CHECK(run_cli({"figure", "--name", "mu1mu2", "--out", b.string()}).code == 0);
  const std::string sa = slurp(a);
  CHECK(sa == slurp(b));
  CHECK(sa.rfind("xi,mu1,mu2\n0,1,5\n", 0) == 0);
  CHECK_FALSE(std::filesystem::exists(a.string() + ".tmp"));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("figure tables: shapes") {
  const Table t = figure_data("mu12prime");
  CHECK(t.rows.size() == 301);
  const std::size_t x = t.column("xi"), d1 = t.column("mu1_prime"), d2 = t.column("mu2_prime");
  for (const auto& row : t.rows)
    if (row[x] <= 1.0) CHECK(row[d2] < 2.0 * (row[x] - 1.0));
  int crossings = 0;
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    if ((t.rows[i - 1][d1] < 0) != (t.rows[i][d1] < 0)) ++crossings;
  CHECK(crossings == 1);
  CHECK_THROWS(t.column("missing"));
}

TEST_CASE("zeta region edge lies between the square-root lines") {
  for (double lam : {0.65, 0.8, 1.0}) {
    const double lo = zeta_region_lower(lam);
    CHECK(lo >= std::sqrt(lam / 2.0));
    CHECK(lo <= std::sqrt(lam));
  }
}

TEST_CASE("json lines writer") {
  std::ostringstream os;
  write_json_lines(os, Table{{"a", "b"}, {{1.0, 2.5}}});
  CHECK(os.str() == "{\"a\":1.0,\"b\":2.5}\n");
}
