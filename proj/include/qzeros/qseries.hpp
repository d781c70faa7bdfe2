#pragma once

// Engine for entire series f(z) = sum_n f_n q^{alpha n^2} w^n, w = z / scale,
// with certified truncation.
//
// Every series is stored with a bounded coefficient sequence f_n. Series whose
// natural form carries an unbounded geometric factor are rescaled: the native
// variable z is variable_scale * w, and all public entry points take native z.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qzeros/errors.hpp"
#include "qzeros/qcore.hpp"

namespace qzeros {

using CoefficientFn = std::function<Complex(std::size_t)>;

struct SeriesSpec {
  QBase q{0.5};
  double alpha = 1.0;
  CoefficientFn coeff;
  // Upper bound on sup_n |f_n|.
  double sup_bound = 1.0;
  // First index with f_n != 0.
  std::size_t nu = 0;
  std::string label;
  // Native variable z = variable_scale * w.
  Complex variable_scale{1.0};
  // Number of coefficients for a finite (polynomial) series.
  std::optional<std::size_t> length;
};

inline constexpr std::size_t kDefaultDegreeCap = 4096;

/// Wraps a pure coefficient generator with a thread-safe cache.
inline CoefficientFn memoize(CoefficientFn gen) {
  struct Cache {
    std::mutex mu;
    std::vector<Complex> values;
    CoefficientFn gen;
  };
  auto cache = std::make_shared<Cache>();
  cache->gen = std::move(gen);
  return [cache](std::size_t n) {
    std::lock_guard<std::mutex> lock(cache->mu);
    while (cache->values.size() <= n) cache->values.push_back(cache->gen(cache->values.size()));
    return cache->values[n];
  };
}

/// Checks the SeriesSpec invariants, probing the first `probe` coefficients.
inline void validate(const SeriesSpec& s, std::size_t probe = 64) {
  auto reject = [&](const std::string& why) {
    fail(ErrorKind::precondition, "series '" + s.label + "': " + why);
  };
  if (!(s.alpha > 0.0) || !std::isfinite(s.alpha)) reject("alpha must be positive");
  if (!s.coeff) reject("missing coefficient generator");
  if (!(s.sup_bound > 0.0) || !std::isfinite(s.sup_bound)) reject("sup_bound must be positive and finite");
  if (s.variable_scale == Complex(0.0) || !is_finite(s.variable_scale)) reject("variable scale must be nonzero");
  if (s.length && *s.length <= s.nu) reject("finite series shorter than its first nonzero index");
  if (s.coeff(s.nu) == Complex(0.0)) reject("coefficient at nu is zero");
  for (std::size_t n = 0; n < s.nu; ++n)
    if (s.coeff(n) != Complex(0.0)) reject("coefficient below nu is nonzero");
  const std::size_t limit = s.length ? std::min(probe, *s.length) : probe;
  for (std::size_t n = 0; n < limit; ++n) {
    const double m = std::abs(s.coeff(n));
    if (!std::isfinite(m) || m > s.sup_bound * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "|f_" << n << "| = " << m << " exceeds sup_bound " << s.sup_bound;
      reject(os.str());
    }
  }
}

/// Where to cut the series for |w| <= rho and what the dropped tail weighs.
struct TruncationPlan {
  std::size_t last_index = 0;  // terms 0..last_index are kept
  double log_peak = -std::numeric_limits<double>::infinity();  // log of the largest bound term
  double log_tail = -std::numeric_limits<double>::infinity();  // log of the tail bound
};

namespace detail {

inline double log_abs_power_q(const SeriesSpec& s, double n) { return s.alpha * n * n * s.q.log().real(); }

// log of sup * |q|^{alpha n^2} rho^n (times n / rho for the derivative).
inline double log_bound_term(const SeriesSpec& s, double log_rho, std::size_t n, int derivative) {
  const double nn = static_cast<double>(n);
  double v = std::log(s.sup_bound) + log_abs_power_q(s, nn) + nn * log_rho;
  if (derivative == 1) {
    if (n == 0) return -std::numeric_limits<double>::infinity();
    v += std::log(nn) - log_rho;
  }
  return v;
}

}  // namespace detail

/// Truncation index from the peak of the bound terms: past the peak, extend
/// until consecutive bound terms shrink by 1/2 and the next one is below
/// tol * max(floor, peak). The geometric tail is then at most twice that term.
inline TruncationPlan plan_truncation(const SeriesSpec& s, double rho, double tol, int derivative = 0,
                                      double scale_floor = 1.0,
                                      std::size_t degree_cap = kDefaultDegreeCap) {
  if (!(tol > 0.0)) fail(ErrorKind::domain, "truncation tolerance must be positive");
  TruncationPlan plan;
  const std::size_t first = derivative == 1 ? 1 : 0;
  if (rho == 0.0) {
    plan.last_index = first;
    plan.log_peak = derivative == 1 ? std::log(s.sup_bound) : std::log(s.sup_bound);
    plan.log_tail = -std::numeric_limits<double>::infinity();
    return plan;
  }
  const double log_rho = std::log(rho);
  const double big_l = -s.q.log().real();  // -log|q| > 0
  const double peak_index = log_rho / (2.0 * s.alpha * big_l);
  const double log_half = std::log(0.5);
  const double log_tol = std::log(tol);
  const double log_floor = scale_floor > 0.0 ? std::log(scale_floor) : -std::numeric_limits<double>::infinity();

  for (std::size_t n = first;; ++n) {
    const double b = detail::log_bound_term(s, log_rho, n, derivative);
    plan.log_peak = std::max(plan.log_peak, b);
    if (s.length && n + 1 >= *s.length) {
      plan.last_index = n;
      plan.log_tail = -std::numeric_limits<double>::infinity();
      return plan;
    }
    const double next = detail::log_bound_term(s, log_rho, n + 1, derivative);
    const bool past_peak = static_cast<double>(n) >= peak_index;
    const bool ratio_ok = next - b <= log_half;
    if (past_peak && ratio_ok && next < log_tol + std::max(plan.log_peak, log_floor)) {
      plan.last_index = n;
      plan.log_tail = next + std::log(2.0);
      return plan;
    }
    if (n >= degree_cap) {
      std::ostringstream os;
      os << "series '" << s.label << "' needs degree above cap " << degree_cap << " at |w| = " << rho;
      fail(ErrorKind::degree_cap, os.str());
    }
  }
}

/// Result of a log-scaled evaluation.
struct LogEvalResult {
  LogComplex value;
  double log_abs_error = -std::numeric_limits<double>::infinity();
  double log_scale = 0.0;  // log of the peak term magnitude
  std::size_t terms_used = 0;
};

struct EvalResult {
  Complex value;
  double abs_error = 0.0;
  std::size_t terms_used = 0;
  double scale = 1.0;  // peak term magnitude
};

namespace detail {

// log-scaled n-th term f_n q^{alpha n^2} w^n (or n f_n q^{alpha n^2} w^{n-1}).
inline LogComplex log_term(const SeriesSpec& s, std::size_t n, const LogComplex& w, int derivative) {
  const Complex f = s.coeff(n);
  if (f == Complex(0.0)) return LogComplex::zero();
  const double nn = static_cast<double>(n);
  const Complex qpow = s.alpha * nn * nn * s.q.log();
  double lm = std::log(std::abs(f)) + qpow.real();
  double ph = std::arg(f) + qpow.imag();
  double power = nn;
  if (derivative == 1) {
    if (n == 0) return LogComplex::zero();
    lm += std::log(nn);
    power = nn - 1.0;
  }
  if (power > 0.0) {
    if (w.is_zero()) return LogComplex::zero();
    lm += power * w.log_mag;
    ph += power * w.phase;
  }
  return LogComplex::from_parts(lm, ph);
}

inline LogEvalResult sum_terms(const SeriesSpec& s, Complex w, std::size_t last_index, int derivative,
                               double log_tail) {
  const LogComplex lw = LogComplex::from_complex(w);
  StableAccumulator acc;
  // Running sum of |terms| relative to a fixed reference, for the rounding estimate.
  double abs_peak = -std::numeric_limits<double>::infinity();
  std::vector<double> mags;
  mags.reserve(last_index + 1);
  for (std::size_t n = 0; n <= last_index; ++n) {
    const LogComplex t = log_term(s, n, lw, derivative);
    acc.add(t);
    if (!t.is_zero()) {
      mags.push_back(t.log_mag);
      abs_peak = std::max(abs_peak, t.log_mag);
    }
  }
  double abs_sum_rel = 0.0;
  for (double m : mags) abs_sum_rel += std::exp(m - abs_peak);
  LogEvalResult r;
  r.value = acc.result();
  r.terms_used = last_index + 1;
  r.log_scale = std::isfinite(abs_peak) ? abs_peak : 0.0;
  const double rounding = 4.0 * static_cast<double>(last_index + 2) * kEps * abs_sum_rel;
  const double log_rounding = std::isfinite(abs_peak) && rounding > 0.0
                                  ? abs_peak + std::log(rounding)
                                  : -std::numeric_limits<double>::infinity();
  // log(exp(a) + exp(b))
  const double hi = std::max(log_tail, log_rounding);
  const double lo = std::min(log_tail, log_rounding);
  r.log_abs_error = std::isfinite(lo) ? hi + std::log1p(std::exp(lo - hi)) : hi;
  return r;
}

inline EvalResult to_eval_result(const LogEvalResult& r) {
  EvalResult e;
  e.value = r.value.to_complex();
  e.abs_error = std::exp(r.log_abs_error);
  e.terms_used = r.terms_used;
  e.scale = std::exp(std::min(r.log_scale, kMaxLogMagnitude));
  return e;
}

}  // namespace detail

/// Log-scaled evaluation at native z. Error is absolute, relative to
/// tol * max(1, peak term).
inline LogEvalResult eval_log(const SeriesSpec& s, Complex z, double tol = 1e-15) {
  const Complex w = z / s.variable_scale;
  const TruncationPlan plan = plan_truncation(s, std::abs(w), tol);
  return detail::sum_terms(s, w, plan.last_index, 0, plan.log_tail);
}

/// Evaluation at native z. Throws an overflow error when the value or its
/// peak term leaves double range; eval_log handles those points.
inline EvalResult eval(const SeriesSpec& s, Complex z, double tol = 1e-15) {
  const LogEvalResult r = eval_log(s, z, tol);
  if (r.log_scale > kMaxLogMagnitude)
    fail(ErrorKind::overflow, "series '" + s.label + "' peak term overflows; use eval_log");
  return detail::to_eval_result(r);
}

/// Partial sum of terms 0..last_index at native z, no truncation logic.
inline LogEvalResult partial_sum_log(const SeriesSpec& s, Complex z, std::size_t last_index) {
  return detail::sum_terms(s, z / s.variable_scale, last_index, 0,
                           -std::numeric_limits<double>::infinity());
}

struct LogValueAndDerivative {
  LogEvalResult value;
  LogEvalResult derivative;  // d/dz in the native variable
};

/// f and f' (term-wise differentiated) at native z.
inline LogValueAndDerivative eval_log_with_derivative(const SeriesSpec& s, Complex z, double tol = 1e-15) {
  const Complex w = z / s.variable_scale;
  const double rho = std::abs(w);
  const TruncationPlan p0 = plan_truncation(s, rho, tol);
  LogValueAndDerivative out;
  out.value = detail::sum_terms(s, w, p0.last_index, 0, p0.log_tail);
  const TruncationPlan p1 = plan_truncation(s, rho, tol, 1);
  out.derivative = detail::sum_terms(s, w, p1.last_index, 1, p1.log_tail);
  // d/dz = (1 / scale) d/dw
  const LogComplex inv_scale = LogComplex::from_complex(1.0 / s.variable_scale);
  out.derivative.value = out.derivative.value * inv_scale;
  out.derivative.log_scale += inv_scale.log_mag;
  out.derivative.log_abs_error += inv_scale.log_mag;
  return out;
}

/// Polynomial in the native variable that stands in for the series on |z| <= r.
struct TruncatedPoly {
  std::vector<Complex> coefficients;  // ascending powers of native z
  double radius_valid = 0.0;
  double tail_bound = 0.0;       // sup of the dropped tail on |z| <= radius_valid
  double log_max_term = 0.0;     // log of the largest retained bound term
  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

/// Cuts the series so that the dropped tail on |z| <= r is at most
/// tol * (largest retained term).
inline TruncatedPoly truncate_to_poly(const SeriesSpec& s, double r, double tol,
                                      std::size_t degree_cap = kDefaultDegreeCap) {
  if (!(r >= 0.0)) fail(ErrorKind::domain, "truncate_to_poly: radius must be nonnegative");
  const double rho = r / std::abs(s.variable_scale);
  const TruncationPlan plan = plan_truncation(s, rho, tol, 0, 0.0, degree_cap);
  TruncatedPoly poly;
  poly.radius_valid = r;
  poly.log_max_term = plan.log_peak;
  poly.tail_bound = std::exp(plan.log_tail);
  const Complex log_inv_scale = -std::log(s.variable_scale);
  poly.coefficients.reserve(plan.last_index + 1);
  for (std::size_t n = 0; n <= plan.last_index; ++n) {
    const Complex f = s.coeff(n);
    if (f == Complex(0.0)) {
      poly.coefficients.emplace_back(0.0);
      continue;
    }
    const double nn = static_cast<double>(n);
    const Complex e = s.alpha * nn * nn * s.q.log() + nn * log_inv_scale;
    poly.coefficients.push_back(f * std::exp(e));
  }
  return poly;
}

/// Evaluates an ascending-coefficient polynomial (Horner).
inline Complex eval_poly(std::span<const Complex> c, Complex z) {
  Complex v(0.0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
  return v;
}

/// g(z) = f(z) w^{-nu} / (f_nu q^{alpha nu^2}), so g(0) = 1.
struct NormalizedSeries {
  SeriesSpec g;
  std::size_t nu = 0;
  Complex scale;  // f_nu q^{alpha nu^2}
};

/// Divides out the zero of order nu at the origin:
/// g_n = f_{n+nu} q^{2 alpha nu n} / f_nu, sup |g_n| <= sup |f_n| / |f_nu|.
inline NormalizedSeries normalize(const SeriesSpec& s, std::size_t probe = kDefaultDegreeCap) {
  std::size_t nu = 0;
  const std::size_t limit = s.length ? std::min(*s.length, probe) : probe;
  while (nu < limit && s.coeff(nu) == Complex(0.0)) ++nu;
  if (nu == limit) fail(ErrorKind::precondition, "series '" + s.label + "' has no nonzero coefficient");
  NormalizedSeries out;
  out.nu = nu;
  const Complex f_nu = s.coeff(nu);
  const double nn = static_cast<double>(nu);
  out.scale = f_nu * std::exp(s.alpha * nn * nn * s.q.log());
  if (nu == 0 && f_nu == Complex(1.0)) {
    out.g = s;
    return out;
  }
  SeriesSpec g = s;
  const SeriesSpec base = s;
  g.coeff = [base, nu, f_nu](std::size_t n) {
    const double shift = 2.0 * base.alpha * static_cast<double>(nu) * static_cast<double>(n);
    return base.coeff(n + nu) * std::exp(shift * base.q.log()) / f_nu;
  };
  g.sup_bound = s.sup_bound / std::abs(f_nu);
  g.nu = 0;
  if (s.length) g.length = *s.length - nu;
  g.label = s.label + "/normalized";
  out.g = std::move(g);
  return out;
}

}  // namespace qzeros
