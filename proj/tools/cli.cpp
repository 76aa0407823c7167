#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <locale>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "dgl/degennes.hpp"
#include "dgl/error.hpp"
#include "dgl/glmin.hpp"
#include "dgl/parallel.hpp"
#include "dgl/perturbed.hpp"
#include "figures.hpp"

namespace dgl::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// value * 10^-scale
struct Decimal {
  std::int64_t value = 0;
  int scale = 0;
};

Decimal parse_decimal(std::string_view s) {
  Decimal d;
  bool neg = false, dot = false, any = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
  for (; i < s.size(); ++i) {
    const char ch = s[i];
    if (ch == '.' && !dot) {
      dot = true;
    } else if (ch >= '0' && ch <= '9') {
      if (d.value > (std::numeric_limits<std::int64_t>::max() - 9) / 10)
        throw std::invalid_argument("number too long: " + std::string(s));
      d.value = d.value * 10 + (ch - '0');
      if (dot) ++d.scale;
      any = true;
    } else {
      throw std::invalid_argument("not a decimal number: " + std::string(s));
    }
  }
  if (!any) throw std::invalid_argument("not a decimal number: " + std::string(s));
  if (neg) d.value = -d.value;
  return d;
}

std::int64_t rescale(Decimal d, int scale) {
  for (int k = d.scale; k < scale; ++k) d.value *= 10;
  return d.value;
}

double to_double(std::int64_t v, int scale) {
  // strtod of the exact decimal gives the correctly rounded value
  std::string s = std::to_string(v < 0 ? -v : v);
  if (scale > 0) {
    if (static_cast<int>(s.size()) <= scale) s.insert(0, scale + 1 - s.size(), '0');
    s.insert(s.size() - scale, ".");
  }
  if (v < 0) s.insert(0, "-");
  std::istringstream is(s);
  is.imbue(std::locale::classic());
  double x = 0.0;
  is >> x;
  return x;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

std::string fmt(double x, int digits) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(digits);
  os << x;
  return os.str();
}

// everything the subcommands accept; presence is tracked by CLI11
struct Flags {
  double lambda = 0.0, nu = 0.0, z = 0.0, tmax = 0.0, tol = 0.0;
  int j = 0;
  std::size_t n = 0;
  int digits = 10;
  std::string lambda_grid, nu_grid, theorem, out, format, name;
  std::multimap<std::string, CLI::Option*> opts;  // one entry per subcommand

  bool has(const std::string& key) const {
    const auto [lo, hi] = opts.equal_range(key);
    return std::any_of(lo, hi, [](const auto& kv) { return kv.second->count() > 0; });
  }
};

void add_flag(CLI::App* sub, Flags& f, const std::string& key) {
  CLI::Option* o = nullptr;
  if (key == "lambda") o = sub->add_option("--lambda", f.lambda, "lambda");
  else if (key == "nu") o = sub->add_option("--nu", f.nu, "nu (xi for mu)");
  else if (key == "z") o = sub->add_option("--z", f.z, "profile centre z");
  else if (key == "j") o = sub->add_option("--j", f.j, "eigenvalue index / count");
  else if (key == "tmax") o = sub->add_option("--tmax", f.tmax, "grid radius");
  else if (key == "n") o = sub->add_option("--n", f.n, "grid nodes");
  else if (key == "tol") o = sub->add_option("--tol", f.tol, "tolerance");
  else if (key == "digits") o = sub->add_option("--digits", f.digits, "significant digits")->check(CLI::Range(1, 17));
  else if (key == "lambda-grid") o = sub->add_option("--lambda-grid", f.lambda_grid, "lo:hi:step or list");
  else if (key == "nu-grid") o = sub->add_option("--nu-grid", f.nu_grid, "lo:hi:step or list");
  else if (key == "theorem")
    o = sub->add_option("--theorem", f.theorem, "certificate family")
            ->check(CLI::IsMember({"largenu-i", "largenu-ii", "nuzeta-local", "identities",
                                   "norm-bounds", "sandwich"}));
  else if (key == "out") o = sub->add_option("--out", f.out, "output file");
  else if (key == "format") o = sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  else if (key == "name") o = sub->add_option("--name", f.name, "figure name");
  f.opts.emplace(key, o);
}

void require(const Flags& f, std::initializer_list<const char*> keys) {
  for (const char* k : keys)
    if (!f.has(k)) throw UsageError(std::string("--") + k + " is required");
}

void check_finite(const Flags& f) {
  const std::pair<const char*, double> vals[] = {
      {"lambda", f.lambda}, {"nu", f.nu}, {"z", f.z}, {"tmax", f.tmax}, {"tol", f.tol}};
  for (const auto& [k, v] : vals)
    if (f.has(k) && !std::isfinite(v)) throw UsageError(std::string("--") + k + " must be finite");
  if (f.has("n") && f.n < 3) throw UsageError("--n must be at least 3");
  if (f.has("tmax") && !(f.tmax > 0.0)) throw UsageError("--tmax must be positive");
}

std::vector<double> grid_or(const Flags& f, const std::string& key, const std::string& fallback) {
  try {
    return parse_grid(f.has(key) ? (key == "lambda-grid" ? f.lambda_grid : f.nu_grid) : fallback);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--" + key + ": " + e.what());
  }
}

// --lambda overrides --lambda-grid
std::vector<double> lambdas_of(const Flags& f, const std::string& fallback) {
  if (f.has("lambda")) return {f.lambda};
  return grid_or(f, "lambda-grid", fallback);
}

// where the subcommand output goes: a file written in one piece, or `out`
struct Sink {
  const Flags& f;
  std::ostream& out;
  void emit(const std::string& s) const {
    if (f.out.empty())
      out << s;
    else
      write_atomic(f.out, s);
  }
};

std::string table_text(const Table& t, const std::string& format) {
  std::ostringstream os;
  if (format == "json")
    write_json_lines(os, t);
  else
    write_csv(os, t);
  return os.str();
}

int cmd_mu(const Flags& f, std::ostream& out) {
  require(f, {"nu"});
  const int j = f.has("j") ? f.j : 1;
  GridSpec grid = GridSpec::around(f.nu);
  if (f.has("tmax") || f.has("n"))
    grid = GridSpec::uniform(f.has("tmax") ? f.tmax : grid.t_max, f.has("n") ? f.n : grid.n);
  const EigenResult r = mu(j, f.nu, Method::characteristic, grid);
  int code = kOk;
  double fd = std::numeric_limits<double>::quiet_NaN();
  if (f.has("tol")) {
    fd = mu_value(j, f.nu, Method::finite_difference);
    if (!(std::fabs(fd - r.mu) <= f.tol)) code = kFailed;
  }
  if (f.format == "json") {
    nlohmann::ordered_json o{{"j", j}, {"xi", f.nu}, {"mu", r.mu}};
    if (f.has("tol")) o["mu_fd"] = fd;
    out << o.dump() << '\n';
  } else {
    out << "mu_" << j << "(" << fmt(f.nu, f.digits) << ") = " << fmt(r.mu, f.digits) << '\n';
    if (f.has("tol")) out << "finite difference: " << fmt(fd, f.digits) << '\n';
  }
  if (!f.out.empty()) {
    Table t{{"t", "u"}, {}};
    for (std::size_t i = 0; i < grid.n; ++i) t.rows.push_back({grid.node(i), r.u[i]});
    write_atomic(f.out, table_text(t, f.format));
  }
  return code;
}

int cmd_theta0(const Flags& f, std::ostream& out) {
  const UniversalConstants& c = universal_constants();
  const std::pair<const char*, double> rows[] = {
      {"theta0", c.theta0},     {"xi0", c.xi0},         {"u1_l4_fourth", c.u1_l4_fourth},
      {"xi0_2", c.xi0_2},       {"mu2_min", c.mu2_min}, {"xi0_3", c.xi0_3},
      {"mu3_min", c.mu3_min},   {"xi_hat_2", c.xi_hat_2}, {"xi_hat_3", c.xi_hat_3}};
  std::ostringstream os;
  if (f.format == "json") {
    nlohmann::ordered_json o;
    for (const auto& [k, v] : rows) o[k] = v;
    os << o.dump() << '\n';
  } else {
    for (const auto& [k, v] : rows) os << k << " = " << fmt(v, f.digits) << '\n';
  }
  Sink{f, out}.emit(os.str());
  return kOk;
}

void profile_summary(std::ostream& os, const MinimizerProfile& p, const Flags& f) {
  const std::pair<const char*, double> rows[] = {
      {"energy", p.energy}, {"f0", p.f0},         {"l2", p.l2},
      {"l4", p.l4},         {"linf", p.linf},     {"residual", p.residual}};
  for (const auto& [k, v] : rows) os << k << " = " << fmt(v, f.digits) << '\n';
}

std::string profile_text(const MinimizerProfile& p, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    Table t{{"t", "f"}, {}};
    for (std::size_t i = 0; i < p.grid.n; ++i) t.rows.push_back({p.grid.node(i), p.f[i]});
    write_json_lines(os, t);
  } else {
    write_profile_csv(os, p);
  }
  return os.str();
}

int cmd_minimize(const Flags& f, std::ostream& out) {
  require(f, {"z", "lambda"});
  GridSpec grid = profile_grid(f.z, f.has("n") ? f.n : kProfileNodes);
  if (f.has("tmax")) grid = GridSpec::uniform(f.tmax, grid.n);
  const MinimizerProfile p = minimize_functional(f.z, f.lambda, grid);
  profile_summary(out, p, f);
  if (!f.out.empty()) write_atomic(f.out, profile_text(p, f.format));
  return kOk;
}

int cmd_zeta(const Flags& f, std::ostream& out) {
  require(f, {"lambda"});
  GridSpec grid = zeta_grid(f.lambda, f.has("n") ? f.n : kProfileNodes);
  if (f.has("tmax")) grid = GridSpec::uniform(f.tmax, grid.n);
  const ZetaRecord rec = zeta(f.lambda, grid);
  out << "zeta = " << fmt(rec.zeta, f.digits) << '\n';
  out << "surface_energy = " << fmt(surface_energy(rec), f.digits) << '\n';
  profile_summary(out, rec.profile, f);
  if (rec.multiple_minima) out << "multiple minima within 1e-4 of the best energy\n";
  if (!f.out.empty()) write_atomic(f.out, profile_text(rec.profile, f.format));
  return kOk;
}

int cmd_spectrum(const Flags& f, std::ostream& out) {
  require(f, {"lambda", "nu"});
  const std::size_t n = f.has("n") ? f.n : kProfileNodes;
  GridSpec grid = zeta_grid(f.lambda, n);
  if (f.has("tmax"))
    grid = GridSpec::uniform(f.tmax, n);
  else if (grid.t_max < required_radius(f.nu))
    grid = GridSpec::uniform(required_radius(f.nu) + 0.5, n);
  const ZetaRecord rec = zeta(f.lambda, grid);
  const std::size_t k = f.has("j") ? static_cast<std::size_t>(std::max(f.j, 1)) : 2;
  const PerturbedSpectrum s = spectrum(f.lambda, f.nu, rec, k);
  std::ostringstream os;
  if (f.format == "json") {
    nlohmann::ordered_json o{{"lambda", f.lambda}, {"nu", f.nu}, {"zeta", rec.zeta}};
    o["values"] = s.values;
    os << o.dump() << '\n';
  } else {
    os << "zeta = " << fmt(rec.zeta, f.digits) << '\n';
    for (std::size_t i = 0; i < s.values.size(); ++i)
      os << "lambda_" << i + 1 << " = " << fmt(s.values[i], f.digits) << '\n';
  }
  Sink{f, out}.emit(os.str());
  return kOk;
}

std::vector<ZetaRecord> records_for(const std::vector<double>& lambdas, unsigned threads) {
  return parallel_map<ZetaRecord>(
      lambdas.size(), [&](std::size_t i) { return zeta(lambdas[i]); }, threads);
}

std::vector<CertificateReport> run_theorem(const Flags& f) {
  const unsigned threads = 0;  // DGL_THREADS or machine parallelism
  const UniversalConstants& c = universal_constants();
  std::vector<CertificateReport> all;
  auto append = [&](std::vector<CertificateReport> rs) {
    for (auto& r : rs) all.push_back(std::move(r));
  };
  const std::string& th = f.theorem;
  if (th == "largenu-i") {
    append(certify_largenu(lambdas_of(f, "0.60:1.0:0.05"), grid_or(f, "nu-grid", "0:1.33:0.05"),
                           LargeNuPart::i, threads));
  } else if (th == "largenu-ii") {
    append(certify_largenu(lambdas_of(f, "0.60:0.80:0.05"), grid_or(f, "nu-grid", "0:1.6:0.05"),
                           LargeNuPart::ii, threads));
  } else if (th == "nuzeta-local") {
    const auto lams = lambdas_of(f, "0.8,1.0");
    const auto far_nus = grid_or(f, "nu-grid", "5,6,7");
    for (const ZetaRecord& rec : records_for(lams, threads)) {
      append(certify_local_minimum(rec, threads));
      for (double d : {-0.1, -0.05, 0.05, 0.1})
        all.push_back(temple_bound(rec.lambda, rec.zeta + d, rec));
      append(stationary_identities(rec.lambda, rec.zeta, rec));
      if (rec.lambda <= 0.95) append(far_field(far_field_record(rec.lambda), far_nus, threads));
    }
  } else if (th == "identities" || th == "norm-bounds") {
    for (const ZetaRecord& rec : records_for(lambdas_of(f, "0.65,0.8,1.0"), threads)) {
      if (th == "identities") {
        append(identity_suite(rec));
        append(zeta_bounds(rec, c));
      } else {
        append(norm_bounds(rec, c));
      }
    }
  } else if (th == "sandwich") {
    const auto nus = grid_or(f, "nu-grid", "0:2.5:0.1");
    for (const ZetaRecord& rec : records_for(lambdas_of(f, "0.6:1.0:0.1"), threads)) {
      const auto rows = parallel_map<std::vector<CertificateReport>>(
          nus.size(), [&](std::size_t i) { return sandwich(rec.lambda, nus[i], rec, c); },
          threads);
      for (const auto& rs : rows) append(rs);
    }
  }
  sort_reports(all);
  return all;
}

int cmd_certify(const Flags& f, std::ostream& out, std::ostream& err) {
  require(f, {"theorem"});
  const std::vector<CertificateReport> reports = run_theorem(f);
  std::ostringstream os;
  if (f.format == "csv")
    write_reports_csv(os, reports);
  else
    write_reports_json(os, reports);
  Sink{f, out}.emit(os.str());

  std::size_t failed = 0;
  const CertificateReport* worst = nullptr;
  for (const auto& r : reports) {
    if (!r.pass) ++failed;
    if (!worst || r.margin < worst->margin) worst = &r;
  }
  err << f.theorem << ": " << reports.size() << " reports, " << failed << " failed";
  if (worst) err << ", smallest margin " << fmt(worst->margin, 4) << " (" << worst->name << ")";
  err << '\n';
  return failed == 0 ? kOk : kFailed;
}

int cmd_figure(const Flags& f, std::ostream& out) {
  require(f, {"name"});
  FigureOptions opt;
  if (f.has("n")) opt.n = f.n;
  Sink{f, out}.emit(table_text(figure_data(f.name, opt), f.format));
  return kOk;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw std::invalid_argument("expected lo:hi:step");
    const Decimal lo = parse_decimal(parts[0]), hi = parse_decimal(parts[1]),
                  step = parse_decimal(parts[2]);
    const int scale = std::max({lo.scale, hi.scale, step.scale});
    const std::int64_t a = rescale(lo, scale), b = rescale(hi, scale), s = rescale(step, scale);
    if (s <= 0) throw std::invalid_argument("step must be positive");
    if (b < a) throw std::invalid_argument("hi below lo");
    if ((b - a) / s > 100000) throw std::invalid_argument("grid too large");
    std::vector<double> out;
    for (std::int64_t v = a; v <= b; v += s) out.push_back(to_double(v, scale));
    return out;
  }
  std::vector<double> out;
  for (std::string_view p : split(text, ',')) {
    const Decimal d = parse_decimal(p);
    out.push_back(to_double(d.value, d.scale));
  }
  return out;
}

void write_reports_json(std::ostream& os, const std::vector<CertificateReport>& reports) {
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    for (const auto& [k, v] : r.point) j[k] = v;
    j["margin"] = r.margin;
    j["pass"] = r.pass;
    if (!r.detail.empty()) j["detail"] = r.detail;
    os << j.dump() << '\n';
  }
}

void write_reports_csv(std::ostream& os, const std::vector<CertificateReport>& reports) {
  std::ostringstream buf;
  buf.imbue(std::locale::classic());
  buf.precision(12);
  buf << "name,lambda,nu,zeta,j,margin,pass\n";
  for (const auto& r : reports) {
    buf << r.name;
    for (const char* key : {"lambda", "nu", "zeta", "j"}) {
      buf << ',';
      const double v = r.at(key);
      if (!std::isnan(v)) buf << v;
    }
    buf << ',' << r.margin << ',' << (r.pass ? "true" : "false") << '\n';
  }
  os << buf.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << content;
    os.flush();
    if (!os) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"de Gennes / Ginzburg-Landau half-line toolkit", "dgl"};
  app.require_subcommand(1, 1);
  Flags f;

  struct Sub {
    const char* name;
    const char* help;
    std::vector<std::string> flags;
  };
  const std::vector<Sub> subs = {
      {"mu", "Neumann eigenvalue mu_j(xi); --nu is xi", {"nu", "j", "tmax", "n", "tol", "digits", "out", "format"}},
      {"theta0", "universal constants", {"digits", "out", "format"}},
      {"minimize", "minimizer f_{z,lambda}", {"z", "lambda", "tmax", "n", "digits", "out", "format"}},
      {"zeta", "optimal centre zeta(lambda)", {"lambda", "tmax", "n", "digits", "out", "format"}},
      {"spectrum", "low spectrum of the perturbed operator", {"lambda", "nu", "j", "tmax", "n", "digits", "out", "format"}},
      {"certify", "certificate sweeps", {"theorem", "lambda", "lambda-grid", "nu-grid", "out", "format"}},
      {"figure", "figure data", {"name", "n", "out", "format"}},
  };
  std::map<std::string, CLI::App*> apps;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    for (const auto& key : s.flags) add_flag(sub, f, key);
    apps[s.name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "dgl: " << e.what() << '\n';
    return kUsage;
  }

  std::string cmd;
  for (const auto& [name, sub] : apps)
    if (sub->parsed()) cmd = name;

  try {
    check_finite(f);
    if (cmd == "mu") return cmd_mu(f, out);
    if (cmd == "theta0") return cmd_theta0(f, out);
    if (cmd == "minimize") return cmd_minimize(f, out);
    if (cmd == "zeta") return cmd_zeta(f, out);
    if (cmd == "spectrum") return cmd_spectrum(f, out);
    if (cmd == "certify") return cmd_certify(f, out, err);
    if (cmd == "figure") return cmd_figure(f, out);
    throw UsageError("unknown subcommand");
  } catch (const UsageError& e) {
    err << "dgl: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "dgl: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "dgl: " << e.what() << '\n';
    return e.code() == Errc::unknown_figure || e.code() == Errc::grid_mismatch ? kUsage : kFailed;
  } catch (const std::exception& e) {
    err << "dgl: " << e.what() << '\n';
    return kFailed;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("dgl");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dgl::cli
