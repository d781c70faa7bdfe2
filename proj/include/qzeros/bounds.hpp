#pragma once

// Modulus envelope, zero-modulus floors, counting bounds and growth-exponent
// estimation for entire q-series.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "qzeros/errors.hpp"
#include "qzeros/parallel.hpp"
#include "qzeros/qcore.hpp"
#include "qzeros/qseries.hpp"
#include "qzeros/zeros.hpp"

namespace qzeros {

struct GrowthParams {
  double A = 2.0;
  double C = 1.0;
  double eta = 2.0 / 3.0;  // maximizes (1 - eta) eta^2
};

inline void validate(const GrowthParams& gp) {
  if (!(gp.A > 0.0)) fail(ErrorKind::domain, "growth exponent A must be positive");
  if (!(gp.C > 0.0)) fail(ErrorKind::domain, "growth constant C must be positive");
  if (gp.A > 1.0 && !(gp.eta > 0.0 && gp.eta < 1.0)) fail(ErrorKind::domain, "eta must lie in (0,1)");
}

/// log of the max-modulus envelope for sum f_n q^{alpha n^2} w^n with
/// sup |f_n| <= sup_bound:
///   theta(|q|^{2alpha}) sup / |q|^alpha                     for r <= |q|^{-2alpha},
///   2 theta(|q|^{2alpha}) sup r exp(-log^2 r / (4 alpha log|q|))  for r > |q|^{-2alpha}.
inline double log_lemma_bound(double alpha, double q_mod, double sup_bound, double r) {
  if (!(alpha > 0.0) || !(q_mod > 0.0 && q_mod < 1.0) || !(sup_bound > 0.0) || !(r >= 0.0))
    fail(ErrorKind::domain, "lemma_bound: requires alpha > 0, 0 < |q| < 1, sup > 0, r >= 0");
  const double lq = std::log(q_mod);
  const double theta = theta_sum(std::pow(q_mod, 2.0 * alpha));
  if (r <= std::pow(q_mod, -2.0 * alpha)) return std::log(theta * sup_bound) - alpha * lq;
  const double lr = std::log(r);
  return std::log(2.0 * theta * sup_bound) + lr - lr * lr / (4.0 * alpha * lq);
}

inline double lemma_bound(double alpha, double q_mod, double sup_bound, double r) {
  return std::exp(log_lemma_bound(alpha, q_mod, sup_bound, r));
}

/// Envelope for a spec at native radius r (evaluated at |w| = r / |scale|).
inline double log_lemma_bound(const SeriesSpec& s, double r) {
  return log_lemma_bound(s.alpha, s.q.modulus(), s.sup_bound, r / std::abs(s.variable_scale));
}

/// log max |f| over |z| = r for any function returning a LogEvalResult,
/// sampled at `samples` equispaced angles starting at angle 0.
template <class F>
double log_max_modulus_of(F&& f, double r, std::size_t samples) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples; ++k) {
    const double theta = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(samples);
    best = std::max(best, f(std::polar(r, theta)).value.log_mag);
  }
  return best;
}

/// log M(r, f), sampled at max(min_samples, 8 N(r)) angles where N(r) is the
/// truncation degree at r.
inline double log_max_modulus(const SeriesSpec& s, double r, std::size_t min_samples = 64) {
  if (!(r >= 0.0)) fail(ErrorKind::domain, "max modulus requires r >= 0");
  if (r == 0.0) return eval_log(s, Complex(0.0)).value.log_mag;
  const TruncationPlan plan = plan_truncation(s, r / std::abs(s.variable_scale), 1e-15);
  const std::size_t samples = std::max(min_samples, 8 * (plan.last_index + 1));
  return log_max_modulus_of([&](Complex z) { return eval_log(s, z); }, r, samples);
}

inline double estimate_max_modulus(const SeriesSpec& s, double r, std::size_t min_samples = 64) {
  const double lm = log_max_modulus(s, r, min_samples);
  if (lm > kMaxLogMagnitude) fail(ErrorKind::overflow, "max modulus overflows; use log_max_modulus");
  return std::exp(lm);
}

/// log R_n. For A > 1: C(eta,A,C) n^{1/(A-1)} with
/// C(eta,A,C) = ((1-eta) eta^A / C)^{1/(A-1)}. For A <= 1: the solution of
/// C 2^{A+1} log^A R_n = n, i.e. (n / (C 2^{A+1}))^{1/A}.
inline double log_radius_floor(std::size_t n, const GrowthParams& gp) {
  if (n == 0) fail(ErrorKind::domain, "radius_floor requires n >= 1");
  validate(gp);
  const double nn = static_cast<double>(n);
  if (gp.A > 1.0) {
    const double c = std::pow((1.0 - gp.eta) * std::pow(gp.eta, gp.A) / gp.C, 1.0 / (gp.A - 1.0));
    return c * std::pow(nn, 1.0 / (gp.A - 1.0));
  }
  return std::pow(nn / (gp.C * std::pow(2.0, gp.A + 1.0)), 1.0 / gp.A);
}

inline double radius_floor(std::size_t n, const GrowthParams& gp) { return std::exp(log_radius_floor(n, gp)); }

/// The closed form exp(2 (2C)^{1/A} n^{1/A}) printed next to the A <= 1
/// defining relation; reported side by side, never asserted.
inline double paper_closed_form_floor(std::size_t n, const GrowthParams& gp) {
  validate(gp);
  const double nn = static_cast<double>(n);
  return std::exp(2.0 * std::pow(2.0 * gp.C, 1.0 / gp.A) * std::pow(nn, 1.0 / gp.A));
}

/// exp(C(eta,C) n) with C(eta,C) = (1-eta) eta^2 / C.
inline double corollary_floor(std::size_t n, double eta, double C) {
  if (!(eta > 0.0 && eta < 1.0)) fail(ErrorKind::domain, "corollary_floor requires 0 < eta < 1");
  if (!(C > 0.0)) fail(ErrorKind::domain, "corollary_floor requires C > 0");
  return std::exp((1.0 - eta) * eta * eta / C * static_cast<double>(n));
}

/// Sampled max-modulus curve. Values are stored as logs.
struct ModulusProfile {
  double A = 2.0;
  std::vector<double> radii;
  std::vector<double> log_M;
  std::vector<double> log_envelope;
  std::vector<double> ratio;  // log M / log^A r
};

struct GrowthFit {
  double C_est = 0.0;
  double sampled_limsup = 0.0;  // max ratio over the top half of the grid
  ModulusProfile profile;
};

/// n points per decade from lo to hi inclusive.
inline std::vector<double> log_spaced_grid(double lo, double hi, std::size_t per_decade) {
  if (!(lo > 0.0 && hi > lo) || per_decade == 0) fail(ErrorKind::domain, "invalid log-spaced grid");
  const double decades = std::log10(hi / lo);
  const auto count = static_cast<std::size_t>(std::ceil(decades * static_cast<double>(per_decade))) + 1;
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = lo * std::pow(10.0, decades * static_cast<double>(i) / static_cast<double>(count - 1));
  return g;
}

inline std::vector<double> default_growth_grid() { return log_spaced_grid(10.0, 1e6, 40); }

inline ModulusProfile modulus_profile(const SeriesSpec& s, double A, const std::vector<double>& r_grid) {
  ModulusProfile p;
  p.A = A;
  p.radii = r_grid;
  const std::size_t n = r_grid.size();
  p.log_M.assign(n, 0.0);
  p.log_envelope.assign(n, 0.0);
  p.ratio.assign(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    const double r = r_grid[i];
    p.log_M[i] = log_max_modulus(s, r);
    p.log_envelope[i] = log_lemma_bound(s, r);
    const double lr = std::log(r);
    p.ratio[i] = lr > 0.0 ? p.log_M[i] / std::pow(lr, A) : std::numeric_limits<double>::quiet_NaN();
  });
  return p;
}

/// C_est = 1.05 * max over the top half of the grid of log M(r) / log^A r.
inline GrowthFit growth_exponent_fit(const SeriesSpec& s, double A, const std::vector<double>& r_grid) {
  if (!(A > 0.0)) fail(ErrorKind::domain, "growth exponent A must be positive");
  if (r_grid.size() < 2) fail(ErrorKind::insufficient_data, "growth fit needs at least two radii");
  for (double r : r_grid)
    if (!(r > 1.0)) fail(ErrorKind::domain, "growth fit radii must exceed 1");
  GrowthFit fit;
  fit.profile = modulus_profile(s, A, r_grid);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = r_grid.size() / 2; i < r_grid.size(); ++i) best = std::max(best, fit.profile.ratio[i]);
  fit.sampled_limsup = best;
  fit.C_est = 1.05 * best;
  return fit;
}

/// Smallest sampled radius from which log M(r) <= C_est log^A r holds at
/// every later grid point: where the growth hypothesis is in force.
inline double hypothesis_radius(const GrowthFit& fit) {
  const auto& p = fit.profile;
  double r0 = std::numeric_limits<double>::infinity();
  for (std::size_t i = p.radii.size(); i-- > 0;) {
    if (!(p.ratio[i] <= fit.C_est)) break;
    r0 = p.radii[i];
  }
  return r0;
}

struct CountingRow {
  double R = 0.0;
  std::size_t count = 0;      // n(R): zeros with |rho| <= R
  double bound_jensen = 0.0;  // C 2^A / log 2 * log^A R
  double bound_eta = 0.0;     // C eta^{1-A} / (1-eta) * log^{A-1} R (A > 1)
  bool ok = false;
};

struct ConstructedRadiusRow {
  std::size_t n = 0;
  double R_n = 0.0;
  std::size_t count = 0;
  double limit = 0.0;  // eta n (A > 1) or n / (2 log 2) (A <= 1)
  bool ok = false;
};

struct CountingReport {
  std::vector<CountingRow> rows;
  std::vector<ConstructedRadiusRow> constructed;
  bool pass = true;
};

/// Counting function n(R) over the listed zeros (origin excluded).
inline std::size_t counting_function(const std::vector<double>& moduli, double R) {
  return static_cast<std::size_t>(std::count_if(moduli.begin(), moduli.end(), [R](double m) { return m <= R; }));
}

/// Empirical n(R) against the Jensen-derived counting bounds on radii
/// max(2, valid_from) <= R < search radius, plus n(R_n) at the constructed
/// floor radii in the same range. valid_from is where log M <= C log^A r
/// starts to hold (see hypothesis_radius).
inline CountingReport counting_check(const ZeroList& zeros, const GrowthParams& gp, const std::vector<double>& R_grid,
                                     double valid_from = 2.0) {
  validate(gp);
  std::vector<double> moduli;
  for (const Complex z : zeros.expanded()) moduli.push_back(std::abs(z));
  const double limit_radius = zeros.search_radius;
  const double lo = std::max(2.0, valid_from);
  CountingReport rep;
  for (double R : R_grid) {
    if (R < lo || R >= limit_radius) continue;
    CountingRow row;
    row.R = R;
    row.count = counting_function(moduli, R);
    const double lr = std::log(R);
    row.bound_jensen = gp.C * std::pow(2.0, gp.A) / std::log(2.0) * std::pow(lr, gp.A);
    row.ok = static_cast<double>(row.count) <= row.bound_jensen;
    if (gp.A > 1.0) {
      row.bound_eta = gp.C * std::pow(gp.eta, 1.0 - gp.A) / (1.0 - gp.eta) * std::pow(lr, gp.A - 1.0);
      row.ok = row.ok && static_cast<double>(row.count) <= row.bound_eta;
    }
    rep.pass = rep.pass && row.ok;
    rep.rows.push_back(row);
  }
  for (std::size_t n = 1;; ++n) {
    const double Rn = radius_floor(n, gp);
    if (Rn >= limit_radius) break;
    if (n > 100000) break;
    if (Rn < lo) continue;
    ConstructedRadiusRow row;
    row.n = n;
    row.R_n = Rn;
    row.count = counting_function(moduli, Rn);
    row.limit = gp.A > 1.0 ? gp.eta * static_cast<double>(n) : static_cast<double>(n) / (2.0 * std::log(2.0));
    row.ok = static_cast<double>(row.count) <= row.limit;
    rep.pass = rep.pass && row.ok;
    rep.constructed.push_back(row);
  }
  return rep;
}

struct BoundCertificate {
  std::size_t n = 0;
  double floor_Rn = 0.0;
  double zero_modulus = 0.0;
  bool satisfied = false;
};

struct CertifyResult {
  std::vector<BoundCertificate> certificates;
  std::optional<std::size_t> min_N;  // first index from which every certificate passes
};

/// |rho_n| >= R_n for each listed modulus (ordered, 1-based n).
inline CertifyResult certify(const std::vector<double>& moduli, const GrowthParams& gp) {
  validate(gp);
  CertifyResult res;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    BoundCertificate c;
    c.n = i + 1;
    c.floor_Rn = radius_floor(c.n, gp);
    c.zero_modulus = moduli[i];
    c.satisfied = c.zero_modulus >= c.floor_Rn;
    res.certificates.push_back(c);
  }
  std::optional<std::size_t> min_n;
  for (std::size_t i = res.certificates.size(); i-- > 0;) {
    if (!res.certificates[i].satisfied) break;
    min_n = res.certificates[i].n;
  }
  res.min_N = min_n;
  return res;
}

inline CertifyResult certify(const ZeroList& zeros, const GrowthParams& gp) {
  std::vector<double> moduli;
  for (const Complex z : zeros.expanded()) moduli.push_back(std::abs(z));
  return certify(moduli, gp);
}

}  // namespace qzeros
