// qzeros command-line front end.
//
// exit codes: 0 ok, 1 verification failure, 2 invalid input,
// 3 numerical non-convergence (or overflow / collision that could not be avoided)

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qzeros/qzeros.hpp"
#include "qzeros/verify.hpp"

using json = nlohmann::ordered_json;
using qzeros::Complex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts 1.5, -2e-3, 0.3+0.2i, 0.3-0.2j, -i, 2i, (0.3,0.2), 0.3,0.2
Complex parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto bad = [&]() -> InputError { return InputError("malformed complex literal '" + raw + "'"); };
  if (s.empty()) throw bad();
  if (s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  auto to_double = [&](const std::string& t) {
    if (t.empty()) throw bad();
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &pos);
    } catch (const std::exception&) {
      throw bad();
    }
    if (pos != t.size() || !std::isfinite(v)) throw bad();
    return v;
  };
  if (const auto comma = s.find(','); comma != std::string::npos)
    return {to_double(s.substr(0, comma)), to_double(s.substr(comma + 1))};
  if (s.back() != 'i' && s.back() != 'j') return {to_double(s), 0.0};
  s.pop_back();
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return to_double(t);
  };
  if (split == std::string::npos) return {0.0, imag_part(s)};
  return {to_double(s.substr(0, split)), imag_part(s.substr(split))};
}

struct Config {
  std::string function = "Eq";
  std::string q = "0.5";
  double alpha = 1.0;
  double nu = 0.0;
  std::string t = "0";
  std::vector<std::string> a, b;
  std::string coeff_file;
  std::string z = "0";
  double radius = 0.0;
  std::size_t count = 0;
  double tol = 0.0;  // 0: command default
  std::string format;  // empty: command default
  std::string output;
  std::uint64_t seed = 20240601;
  std::string method = "aberth";
  // bounds
  double A = 2.0;
  double eta = 2.0 / 3.0;
  std::string C = "auto";
  bool closed_form = false;
  // regions
  std::size_t theta_count = 64;
  std::size_t t_count = 16;
  double safety = 0.99;
  double strip = 0.0;
  std::vector<double> radii{1e4, 1e6, 1e8};
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Out {
 public:
  explicit Out(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InputError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void check_format(Config& c, const char* fallback = "csv") {
  if (c.format.empty()) c.format = fallback;
  if (c.format != "csv" && c.format != "json") throw InputError("--format must be csv or json");
}

qzeros::RootMethod root_method(const Config& c) {
  if (c.method == "aberth") return qzeros::RootMethod::aberth;
  if (c.method == "companion") return qzeros::RootMethod::companion;
  throw InputError("--method must be aberth or companion");
}

std::vector<Complex> parse_list(const std::vector<std::string>& xs) {
  std::vector<Complex> out;
  for (const auto& x : xs) out.push_back(parse_complex(x));
  return out;
}

// alpha=<real> q=<complex> sup=<real>, then one re,im per line
qzeros::SeriesSpec read_coefficient_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open coefficient file '" + path + "'");
  std::string line;
  std::optional<double> alpha, sup;
  std::optional<Complex> q;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    std::istringstream hs(line);
    std::string tok;
    while (hs >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw InputError("bad header token '" + tok + "' in " + path);
      const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (key == "alpha") alpha = parse_complex(val).real();
      else if (key == "q") q = parse_complex(val);
      else if (key == "sup") sup = parse_complex(val).real();
      else throw InputError("unknown header key '" + key + "' in " + path);
    }
    break;
  }
  if (!alpha || !q || !sup) throw InputError("coefficient file header needs alpha=, q= and sup=");
  auto coeffs = std::make_shared<std::vector<Complex>>();
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    coeffs->push_back(parse_complex(line));
  }
  if (coeffs->empty()) throw InputError("coefficient file has no coefficients");
  qzeros::SeriesSpec s;
  s.q = qzeros::QBase(*q);
  s.alpha = *alpha;
  s.sup_bound = *sup;
  s.length = coeffs->size();
  s.coeff = [coeffs](std::size_t n) { return n < coeffs->size() ? (*coeffs)[n] : Complex(0.0); };
  while (s.nu < coeffs->size() && (*coeffs)[s.nu] == Complex(0.0)) ++s.nu;
  if (s.nu == coeffs->size()) throw InputError("all coefficients are zero");
  s.label = "custom";
  return s;
}

bool is_eqzt(const Config& c) { return c.function == "Eqzt"; }

qzeros::SeriesSpec build_series(const Config& c) {
  using namespace qzeros;
  if (is_eqzt(c)) throw InputError("Eqzt is not a single power series in z; use eval or regions");
  if (c.function == "custom" || !c.coeff_file.empty()) {
    if (c.coeff_file.empty()) throw InputError("custom function needs --coeff-file");
    SeriesSpec s = read_coefficient_file(c.coeff_file);
    validate(s);
    return s;
  }
  const QBase q(parse_complex(c.q));
  SeriesSpec s;
  if (c.function == "Eq") s = make_Eq(q);
  else if (c.function == "Aq") s = make_Aq(q);
  else if (c.function == "Eqalpha") s = make_Eq_alpha(q, c.alpha);
  else if (c.function == "partial-theta") s = make_partial_theta(q, c.alpha);
  else if (c.function == "rphis") s = make_rphis(parse_list(c.a), parse_list(c.b), q);
  else if (c.function == "qbessel2") s = make_qbessel(2, c.nu, q).series;
  else if (c.function == "qbessel3") s = make_qbessel(3, c.nu, q).series;
  else if (c.function == "Lalpha") s = make_Lalpha(c.alpha, q);
  else if (c.function == "oscillatory") {
    std::vector<double> ex;
    for (const Complex v : parse_list(c.a)) ex.push_back(v.real());
    s = make_oscillatory(ex, [](std::size_t n) { return static_cast<double>(n + 1); }, parse_complex(c.t).real(), q,
                         c.alpha);
  } else {
    throw InputError("unknown function '" + c.function + "'");
  }
  validate(s);
  return s;
}

double real_q(const Config& c) {
  const Complex q = parse_complex(c.q);
  if (q.imag() != 0.0) throw InputError("this command needs real q");
  return q.real();
}

// zeros for commands that need them: a radius, or the first --count zeros
// truncation tolerance for evaluation, residual tolerance for zero searches
double pick_tol(const Config& c, double fallback) {
  if (c.tol < 0.0 || std::isnan(c.tol)) throw InputError("--tol must be positive");
  return c.tol > 0.0 ? c.tol : fallback;
}
double eval_tol(const Config& c) { return pick_tol(c, 1e-15); }
double zero_tol(const Config& c) { return pick_tol(c, 1e-10); }

qzeros::ZeroList locate(const Config& c, const qzeros::SeriesSpec& s, std::size_t default_count) {
  qzeros::ZeroSearchOptions opt;
  opt.method = root_method(c);
  if (c.radius > 0.0) return qzeros::find_zeros(s, c.radius, zero_tol(c), opt);
  return qzeros::find_first_zeros(s, c.count ? c.count : default_count, zero_tol(c), opt);
}

int cmd_eval(Config& c) {
  check_format(c);
  const Complex z = parse_complex(c.z);
  Complex value;
  double err = 0.0;
  std::size_t terms = 0;
  if (is_eqzt(c)) {
    const auto r = qzeros::eval_Eqzt(z, parse_complex(c.t), qzeros::QBase(parse_complex(c.q)), eval_tol(c));
    value = r.value;
    err = r.abs_error;
    terms = r.terms_used;
  } else {
    const auto r = qzeros::eval(build_series(c), z, eval_tol(c));
    value = r.value;
    err = r.abs_error;
    terms = r.terms_used;
  }
  Out out(c.output);
  if (c.format == "json") {
    out.os() << json{{"re", value.real()}, {"im", value.imag()}, {"abs_error", err}, {"terms_used", terms}}.dump(2)
             << "\n";
  } else {
    out.os() << "re,im,abs_error,terms_used\n"
             << fmt17(value.real()) << "," << fmt17(value.imag()) << "," << fmt17(err) << "," << terms << "\n";
  }
  return kExitOk;
}

int cmd_zeros(Config& c) {
  check_format(c);
  const qzeros::SeriesSpec s = build_series(c);
  const qzeros::ZeroList zl = locate(c, s, 8);
  Out out(c.output);
  auto winding = [](const qzeros::Zero& z) { return z.winding_ok ? z.multiplicity : 0; };
  if (c.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < zl.zeros.size(); ++i) {
      const auto& z = zl.zeros[i];
      rows.push_back({{"index", i + 1},
                      {"re", z.location.real()},
                      {"im", z.location.imag()},
                      {"modulus", std::abs(z.location)},
                      {"residual", z.residual},
                      {"winding", winding(z)}});
    }
    out.os() << json{{"label", zl.label},
                     {"search_radius", zl.search_radius},
                     {"origin_multiplicity", zl.origin_multiplicity},
                     {"winding_total", zl.winding_total},
                     {"complete", zl.complete},
                     {"zeros", rows}}
                    .dump(2)
             << "\n";
  } else {
    out.os() << "index,re,im,modulus,residual,winding\n";
    for (std::size_t i = 0; i < zl.zeros.size(); ++i) {
      const auto& z = zl.zeros[i];
      out.os() << i + 1 << "," << fmt17(z.location.real()) << "," << fmt17(z.location.imag()) << ","
               << fmt17(std::abs(z.location)) << "," << fmt17(z.residual) << "," << winding(z) << "\n";
    }
  }
  bool ok = zl.complete;
  for (const auto& z : zl.zeros) ok = ok && z.winding_ok;
  if (!ok) std::cerr << "zero list failed winding certification\n";
  return ok ? kExitOk : kExitVerify;
}

int cmd_jensen(Config& c) {
  check_format(c, "json");
  if (!(c.radius > 0.0)) throw InputError("jensen needs --radius > 0");
  const qzeros::SeriesSpec s = build_series(c);
  qzeros::ZeroSearchOptions opt;
  opt.method = root_method(c);
  const qzeros::ZeroList zl = qzeros::find_zeros(s, 1.25 * c.radius, zero_tol(c), opt);
  const qzeros::JensenReport rep = qzeros::jensen_check(s, c.radius, zl);
  const bool ok = rep.discrepancy <= 1e-6;
  Out out(c.output);
  if (c.format == "csv") {
    out.os() << "r,integral_lhs,sum_rhs,discrepancy,quadrature_nodes\n"
             << fmt17(rep.r) << "," << fmt17(rep.integral_lhs) << "," << fmt17(rep.sum_rhs) << ","
             << fmt17(rep.discrepancy) << "," << rep.quadrature_nodes << "\n";
  } else {
    out.os() << json{{"r", rep.r},
                     {"integral_lhs", rep.integral_lhs},
                     {"sum_rhs", rep.sum_rhs},
                     {"discrepancy", rep.discrepancy},
                     {"quadrature_nodes", rep.quadrature_nodes},
                     {"pass", ok}}
                    .dump(2)
             << "\n";
  }
  return ok ? kExitOk : kExitVerify;
}

int cmd_bounds(Config& c) {
  check_format(c);
  const qzeros::SeriesSpec s = build_series(c);
  qzeros::GrowthParams gp;
  gp.A = c.A;
  gp.eta = c.eta;
  std::optional<qzeros::GrowthFit> fit;
  if (c.C == "auto") {
    fit = qzeros::growth_exponent_fit(s, gp.A, qzeros::default_growth_grid());
    gp.C = fit->C_est;
  } else {
    gp.C = parse_complex(c.C).real();
  }
  qzeros::validate(gp);
  const qzeros::ZeroList zl = locate(c, s, 8);
  const qzeros::CertifyResult cert = qzeros::certify(zl, gp);
  const double valid_from = fit ? qzeros::hypothesis_radius(*fit) : 2.0;
  const qzeros::CountingReport counting =
      qzeros::counting_check(zl, gp, qzeros::log_spaced_grid(2.0, std::max(4.0, zl.search_radius), 10), valid_from);
  const bool ok = cert.min_N.has_value() && counting.pass;
  Out out(c.output);
  if (c.format == "json") {
    json certs = json::array();
    for (const auto& b : cert.certificates) {
      json row{{"n", b.n}, {"floor", b.floor_Rn}, {"modulus", b.zero_modulus}, {"satisfied", b.satisfied}};
      if (c.closed_form) row["closed_form_floor"] = qzeros::paper_closed_form_floor(b.n, gp);
      certs.push_back(row);
    }
    json rows = json::array();
    for (const auto& r : counting.rows)
      rows.push_back({{"R", r.R}, {"count", r.count}, {"bound_jensen", r.bound_jensen}, {"bound_eta", r.bound_eta},
                      {"ok", r.ok}});
    json cons = json::array();
    for (const auto& r : counting.constructed)
      cons.push_back({{"n", r.n}, {"R_n", r.R_n}, {"count", r.count}, {"limit", r.limit}, {"ok", r.ok}});
    json doc{{"A", gp.A}, {"C", gp.C}, {"eta", gp.eta}, {"valid_from", valid_from}};
    doc["min_N"] = cert.min_N ? json(*cert.min_N) : json(nullptr);
    doc["certificates"] = certs;
    doc["counting"] = rows;
    doc["constructed_radii"] = cons;
    doc["pass"] = ok;
    out.os() << doc.dump(2) << "\n";
  } else {
    out.os() << "# A=" << fmt17(gp.A) << " C=" << fmt17(gp.C) << " eta=" << fmt17(gp.eta)
             << " min_N=" << (cert.min_N ? std::to_string(*cert.min_N) : "none") << "\n";
    out.os() << "# counting on " << fmt17(std::max(2.0, valid_from)) << " <= R < " << fmt17(zl.search_radius) << "\n";
    out.os() << "n,floor,modulus,satisfied" << (c.closed_form ? ",closed_form_floor" : "") << "\n";
    for (const auto& b : cert.certificates) {
      out.os() << b.n << "," << fmt17(b.floor_Rn) << "," << fmt17(b.zero_modulus) << "," << (b.satisfied ? 1 : 0);
      if (c.closed_form) out.os() << "," << fmt17(qzeros::paper_closed_form_floor(b.n, gp));
      out.os() << "\n";
    }
    out.os() << "\nR,count,bound_jensen,bound_eta,ok\n";
    for (const auto& r : counting.rows)
      out.os() << fmt17(r.R) << "," << r.count << "," << fmt17(r.bound_jensen) << "," << fmt17(r.bound_eta) << ","
               << (r.ok ? 1 : 0) << "\n";
    out.os() << "\nn,R_n,count,limit,ok\n";
    for (const auto& r : counting.constructed)
      out.os() << r.n << "," << fmt17(r.R_n) << "," << r.count << "," << fmt17(r.limit) << "," << (r.ok ? 1 : 0)
               << "\n";
  }
  return ok ? kExitOk : kExitVerify;
}

int cmd_hayman(Config& c) {
  check_format(c);
  const qzeros::SeriesSpec s = build_series(c);
  const qzeros::ZeroList zl = locate(c, s, 8);
  // base of the frame where alpha = 1
  const double p = std::pow(s.q.modulus(), s.alpha);
  const qzeros::HaymanFit fit = qzeros::hayman_fit(qzeros::scaled_frame_zeros(zl, s), p);
  Out out(c.output);
  if (c.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < fit.s.size(); ++i)
      rows.push_back({{"n", i + 1}, {"s_re", fit.s[i].real()}, {"s_im", fit.s[i].imag()}, {"residual", fit.residuals[i]}});
    out.os() << json{{"d0_re", fit.d0.real()},
                     {"d0_im", fit.d0.imag()},
                     {"d1_re", fit.d1.real()},
                     {"d1_im", fit.d1.imag()},
                     {"d0_change", fit.d0_change},
                     {"rows", rows}}
                    .dump(2)
             << "\n";
  } else {
    out.os() << "# d0=" << fmt17(fit.d0.real()) << (fit.d0.imag() < 0 ? "" : "+") << fmt17(fit.d0.imag())
             << "i d1=" << fmt17(fit.d1.real()) << (fit.d1.imag() < 0 ? "" : "+") << fmt17(fit.d1.imag())
             << "i d0_change=" << fmt17(fit.d0_change) << "\n";
    out.os() << "n,s_re,s_im,residual\n";
    for (std::size_t i = 0; i < fit.s.size(); ++i)
      out.os() << i + 1 << "," << fmt17(fit.s[i].real()) << "," << fmt17(fit.s[i].imag()) << ","
               << fmt17(fit.residuals[i]) << "\n";
  }
  return kExitOk;
}

json region_json(const qzeros::RegionReport& r) {
  json doc{{"kind", r.kind},
           {"points", r.points},
           {"min_observed", r.min_observed},
           {"min_certified", r.min_certified},
           {"max_route_discrepancy", r.max_route_discrepancy},
           {"prefactor_nonzero", r.prefactor_nonzero},
           {"pass", r.pass}};
  if (r.worst)
    doc["worst"] = {{"theta_re", r.worst->theta.real()}, {"theta_im", r.worst->theta.imag()}, {"t", r.worst->t}};
  return doc;
}

int cmd_regions(Config& c, const std::string& kind) {
  check_format(c);
  const double q = real_q(c);
  Out out(c.output);
  if (kind == "growth-constant") {
    const auto g = qzeros::growth_constant_check(q, parse_complex(c.t), c.radii);
    const bool ok = g.increasing && g.final_relative_error <= 0.25;
    if (c.format == "json") {
      out.os() << json{{"radii", g.radii},
                       {"log_M", g.log_M},
                       {"ratios", g.ratios},
                       {"target", g.target},
                       {"increasing", g.increasing},
                       {"approaching", g.approaching},
                       {"final_relative_error", g.final_relative_error},
                       {"pass", ok}}
                      .dump(2)
               << "\n";
    } else {
      out.os() << "# target=" << fmt17(g.target) << " increasing=" << g.increasing << " approaching=" << g.approaching
               << "\nr,log_M,ratio\n";
      for (std::size_t i = 0; i < g.radii.size(); ++i)
        out.os() << fmt17(g.radii[i]) << "," << fmt17(g.log_M[i]) << "," << fmt17(g.ratios[i]) << "\n";
    }
    if (!ok) std::cerr << "growth constant check failed: ratios not increasing toward the target within 25%\n";
    return ok ? kExitOk : kExitVerify;
  }
  qzeros::RegionKind rk;
  if (kind == "zero-free") rk = qzeros::RegionKind::zero_free;
  else if (kind == "re-positivity") rk = qzeros::RegionKind::re_positivity;
  else if (kind == "im-positivity") rk = qzeros::RegionKind::im_positivity;
  else throw InputError("unknown region kind '" + kind + "'");
  std::vector<Complex> thetas = qzeros::real_theta_grid(c.theta_count);
  if (c.strip > 0.0) {
    if (rk == qzeros::RegionKind::im_positivity) throw InputError("im-positivity is defined for real theta only");
    const auto extra = qzeros::complex_strip_grid(4, c.strip);
    thetas.insert(thetas.end(), extra.begin(), extra.end());
  }
  const qzeros::RegionGrid grid = qzeros::make_region_grid(q, thetas, c.t_count, c.safety, rk);
  qzeros::RegionReport rep;
  if (rk == qzeros::RegionKind::zero_free) rep = qzeros::check_zero_free(grid, c.safety);
  else if (rk == qzeros::RegionKind::re_positivity) rep = qzeros::check_positivity_re(grid, c.safety);
  else rep = qzeros::check_positivity_im(grid, c.safety);
  if (c.format == "json") {
    out.os() << region_json(rep).dump(2) << "\n";
  } else {
    out.os() << "kind,points,min_observed,min_certified,max_route_discrepancy,prefactor_nonzero,pass\n"
             << rep.kind << "," << rep.points << "," << fmt17(rep.min_observed) << "," << fmt17(rep.min_certified)
             << "," << fmt17(rep.max_route_discrepancy) << "," << rep.prefactor_nonzero << "," << rep.pass << "\n";
  }
  return rep.pass ? kExitOk : kExitVerify;
}

int cmd_report(Config& c) {
  check_format(c);
  const auto results = qzeros::run_all(real_q(c), c.seed);
  bool all = true;
  Out out(c.output);
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& r : results) {
      rows.push_back({{"id", r.id}, {"key", r.key}, {"title", r.title}, {"passed", r.passed},
                      {"seconds", r.seconds}, {"detail", r.detail}});
      all = all && r.passed;
    }
    out.os() << json{{"criteria", rows}, {"all_passed", all}}.dump(2) << "\n";
  } else {
    out.os() << "id,key,status,seconds,detail\n";
    for (const auto& r : results) {
      out.os() << r.id << "," << r.key << "," << (r.passed ? "PASS" : "FAIL") << "," << fmt17(r.seconds) << ",\""
               << r.detail << "\"\n";
      all = all && r.passed;
    }
  }
  for (const auto& r : results)
    if (!r.passed) std::cerr << "criterion " << r.id << " (" << r.key << ") failed: " << r.title << "\n";
  return all ? kExitOk : kExitVerify;
}

void add_series_options(CLI::App* sub, Config& c) {
  sub->add_option("--function", c.function,
                  "Eq | Aq | Eqalpha | partial-theta | rphis | qbessel2 | qbessel3 | Eqzt | Lalpha | oscillatory | custom");
  sub->add_option("--q", c.q, "base q (complex literal), 0 < |q| < 1");
  sub->add_option("--alpha", c.alpha, "alpha for Eqalpha, partial-theta, Lalpha, oscillatory");
  sub->add_option("--nu", c.nu, "order of the q-Bessel function");
  sub->add_option("--t", c.t, "t for Eqzt / growth-constant, exponent t for oscillatory");
  sub->add_option("--a", c.a, "numerator parameters (rphis) or exponent polynomial a_0..a_k (oscillatory)");
  sub->add_option("--b", c.b, "denominator parameters (rphis)");
  sub->add_option("--coeff-file", c.coeff_file, "coefficient file for a custom series");
  sub->add_option("--tol", c.tol, "tolerance (default 1e-15 for eval, 1e-10 zero residual elsewhere)");
  sub->add_option("--format", c.format, "csv | json");
  sub->add_option("--output", c.output, "output path (default stdout)");
  sub->add_option("--method", c.method, "aberth | companion");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qzeros: zeros and growth of entire q-series"};
  app.require_subcommand(1);
  Config c;

  auto* eval = app.add_subcommand("eval", "evaluate a function at z");
  add_series_options(eval, c);
  eval->add_option("--z", c.z, "point (complex literal)");

  auto* zeros = app.add_subcommand("zeros", "locate zeros in |z| <= radius, or the first --count zeros");
  add_series_options(zeros, c);
  zeros->add_option("--radius", c.radius, "search radius");
  zeros->add_option("--count", c.count, "number of smallest zeros");

  auto* jensen = app.add_subcommand("jensen", "Jensen mean of log|f| on |z| = radius against the zero sum");
  add_series_options(jensen, c);
  jensen->add_option("--radius", c.radius, "circle radius")->required();

  auto* bounds = app.add_subcommand("bounds", "growth-floor certificates and counting checks");
  add_series_options(bounds, c);
  bounds->add_option("--radius", c.radius, "search radius");
  bounds->add_option("--count", c.count, "number of smallest zeros (default 8)");
  bounds->add_option("--A", c.A, "growth exponent");
  bounds->add_option("--eta", c.eta, "eta in (0,1)");
  bounds->add_option("--C", c.C, "growth constant, or auto");
  bounds->add_flag("--paper-closed-form", c.closed_form, "also print the closed-form A <= 1 floor");

  auto* hayman = app.add_subcommand("hayman", "fit rho_n = p^{1-2n}(d0 + d1 p^n)");
  add_series_options(hayman, c);
  hayman->add_option("--radius", c.radius, "search radius");
  hayman->add_option("--count", c.count, "number of smallest zeros (default 8)");

  auto* regions = app.add_subcommand("regions", "zero-free / positivity regions of E_q(cos theta; t)");
  std::string region_kind;
  regions->add_option("kind", region_kind, "zero-free | re-positivity | im-positivity | growth-constant")->required();
  add_series_options(regions, c);
  regions->add_option("--theta-count", c.theta_count, "real theta points");
  regions->add_option("--t-count", c.t_count, "t points per theta");
  regions->add_option("--safety", c.safety, "fraction of the bound covered by the grid");
  regions->add_option("--strip", c.strip, "add a complex-theta strip |Im theta| <= strip");
  regions->add_option("--radii", c.radii, "radii for growth-constant");

  auto* report = app.add_subcommand("report", "run the verification suite");
  report->add_option("--q", c.q, "base q (real)");
  report->add_option("--seed", c.seed, "seed for the randomized checks");
  report->add_option("--format", c.format, "csv | json");
  report->add_option("--output", c.output, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (eval->parsed()) return cmd_eval(c);
    if (zeros->parsed()) return cmd_zeros(c);
    if (jensen->parsed()) return cmd_jensen(c);
    if (bounds->parsed()) return cmd_bounds(c);
    if (hayman->parsed()) return cmd_hayman(c);
    if (regions->parsed()) return cmd_regions(c, region_kind);
    if (report->parsed()) return cmd_report(c);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const qzeros::Error& e) {
    std::cerr << "error(" << qzeros::to_string(e.kind()) << "): " << e.what() << "\n";
    return e.is_input_error() ? kExitInput : kExitNumeric;
  }
  return kExitInput;
}
