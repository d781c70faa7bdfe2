#pragma once

// Constructors for the named entire q-functions, the q-Hermite and q-Laguerre
// polynomials, the q-plane wave E_q(z;t), and the Laguerre-series identity.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qzeros/errors.hpp"
#include "qzeros/qcore.hpp"
#include "qzeros/qseries.hpp"

namespace qzeros {

namespace detail {

// Lower bound on min_n |(b;q)_n| over all n >= 0. Throws if some factor vanishes.
inline double qpoch_finite_lower_bound(Complex b, const QBase& q, const std::string& name) {
  const double qm = q.modulus();
  double running = 1.0;
  double smallest = 1.0;
  Complex bqk = b;
  std::size_t k = 0;
  for (; std::abs(bqk) >= 1.0 - 1e-12 || k == 0; ++k) {
    const double f = std::abs(1.0 - bqk);
    if (f < 1e-13) {
      std::ostringstream os;
      os << "parameter " << name << " = " << b << " makes (" << name << ";q)_n vanish at n = " << k + 1;
      fail(ErrorKind::domain, os.str());
    }
    running *= f;
    smallest = std::min(smallest, running);
    bqk *= q.value();
    if (k > 100000) fail(ErrorKind::non_convergence, "denominator scan did not terminate");
  }
  // Beyond index k every factor satisfies |1 - b q^j| >= 1 - |b||q|^j.
  const double tail = std::exp(qpoch_infinite_log(Complex(std::abs(bqk)), QBase(qm)).log_mag);
  return std::min(smallest, running * tail);
}

inline double inverse_qq_bound(const QBase& q) {
  const double qm = q.modulus();
  return 1.0 / std::abs(qpoch_infinite(Complex(qm), QBase(qm)));
}

inline constexpr double kSupSlack = 1.0 + 1e-12;

}  // namespace detail

/// Euler's E_q(z) = sum q^{n(n-1)/2} z^n / (q;q)_n, stored with base
/// p = q^{1/2}, alpha = 1, f_n = 1/(q;q)_n and z = p * w.
inline SeriesSpec make_Eq(const QBase& q) {
  SeriesSpec s;
  s.q = QBase(q.pow(0.5));
  s.alpha = 1.0;
  s.coeff = memoize([q](std::size_t n) { return 1.0 / qpoch_finite(q.value(), q, n); });
  s.sup_bound = detail::inverse_qq_bound(q) * detail::kSupSlack;
  s.variable_scale = s.q.value();
  s.label = "Eq";
  return s;
}

/// Ramanujan's A_q(z) = sum q^{n^2} (-z)^n / (q;q)_n.
inline SeriesSpec make_Aq(const QBase& q) {
  SeriesSpec s;
  s.q = q;
  s.alpha = 1.0;
  s.coeff = memoize([q](std::size_t n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign / qpoch_finite(q.value(), q, n);
  });
  s.sup_bound = detail::inverse_qq_bound(q) * detail::kSupSlack;
  s.label = "Aq";
  return s;
}

/// E_q^{(alpha)}(z;q) = sum q^{alpha n^2} z^n / (q;q)_n.
inline SeriesSpec make_Eq_alpha(const QBase& q, double alpha) {
  if (!(alpha > 0.0)) fail(ErrorKind::domain, "Eq_alpha requires alpha > 0");
  SeriesSpec s;
  s.q = q;
  s.alpha = alpha;
  s.coeff = memoize([q](std::size_t n) { return 1.0 / qpoch_finite(q.value(), q, n); });
  s.sup_bound = detail::inverse_qq_bound(q) * detail::kSupSlack;
  s.label = "Eqalpha";
  return s;
}

/// sum q^{alpha n^2} z^n (f_n = 1).
inline SeriesSpec make_partial_theta(const QBase& q, double alpha) {
  if (!(alpha > 0.0)) fail(ErrorKind::domain, "partial theta requires alpha > 0");
  SeriesSpec s;
  s.q = q;
  s.alpha = alpha;
  s.coeff = [](std::size_t) { return Complex(1.0); };
  s.sup_bound = 1.0;
  s.label = "partial-theta";
  return s;
}

/// r phi s (a_1..a_r; b_1..b_s | q, z) with s >= r. With d = s + 1 - r the
/// factor (-q^{(n-1)/2})^{nd} splits into q^{(d/2) n^2} and a geometric part
/// absorbed by the variable scale q^{d/2}, leaving
/// f_n = (-1)^{nd} (a;q)_n / (q,b;q)_n.
inline SeriesSpec make_rphis(std::vector<Complex> as, std::vector<Complex> bs, const QBase& q) {
  const std::size_t r = as.size();
  const std::size_t s_count = bs.size();
  if (s_count < r) fail(ErrorKind::domain, "rphis requires s >= r for an entire series");
  const std::size_t d = s_count + 1 - r;

  double denominator = 1.0 / detail::inverse_qq_bound(q);
  for (std::size_t j = 0; j < bs.size(); ++j)
    denominator *= detail::qpoch_finite_lower_bound(bs[j], q, "b" + std::to_string(j + 1));
  double numerator = 1.0;
  for (const Complex a : as)
    numerator *= std::abs(qpoch_infinite(Complex(-std::abs(a)), QBase(q.modulus())));

  SeriesSpec s;
  s.q = q;
  s.alpha = 0.5 * static_cast<double>(d);
  s.coeff = memoize([as, bs, q, d](std::size_t n) {
    Complex v = 1.0 / qpoch_finite(q.value(), q, n);
    for (const Complex a : as) v *= qpoch_finite(a, q, n);
    for (const Complex b : bs) v /= qpoch_finite(b, q, n);
    return ((n * d) % 2 == 0) ? v : -v;
  });
  s.sup_bound = numerator / denominator * detail::kSupSlack;
  s.variable_scale = q.pow(0.5 * static_cast<double>(d));
  // (a;q)_n vanishes from the first a q^k = 1 on; the series is then finite.
  for (const Complex a : as) {
    Complex aqk = a;
    for (std::size_t k = 0; k < 4096 && std::abs(aqk) > 1e-300; ++k) {
      if (std::abs(1.0 - aqk) < 1e-13) {
        s.length = s.length ? std::min(*s.length, k + 1) : k + 1;
        break;
      }
      aqk *= q.value();
    }
  }
  std::ostringstream label;
  label << r << "phi" << s_count;
  s.label = label.str();
  return s;
}

/// Entire part J_nu^{(k)}(z;q) z^{-nu} = prefactor * series(w), w = -z^2/4.
struct QBessel {
  SeriesSpec series;
  Complex prefactor;
  int kind = 2;
  double nu = 0.0;
};

inline QBessel make_qbessel(int kind, double nu, const QBase& q) {
  if (kind != 2 && kind != 3) fail(ErrorKind::domain, "q-Bessel kind must be 2 or 3");
  const Complex b = q.pow(nu + 1.0);
  QBessel out;
  out.kind = kind;
  out.nu = nu;
  const double den = detail::qpoch_finite_lower_bound(b, q, "q^{nu+1}") / detail::inverse_qq_bound(q);
  SeriesSpec s;
  s.q = q;
  s.alpha = 1.0;
  if (kind == 2) {
    // q^{n^2 + n nu}: absorb q^{n nu} into f_n when it is bounded.
    const bool absorb = nu >= 0.0;
    s.coeff = memoize([q, b, nu, absorb](std::size_t n) {
      Complex v = 1.0 / (qpoch_finite(q.value(), q, n) * qpoch_finite(b, q, n));
      if (absorb) v *= q.pow(nu * static_cast<double>(n));
      return v;
    });
    if (!absorb) s.variable_scale = q.pow(-nu);
  } else {
    // q^{n(n+1)/2} = p^{n^2} p^n with p = q^{1/2}.
    s.q = QBase(q.pow(0.5));
    const Complex p = s.q.value();
    s.coeff = memoize([q, b, p](std::size_t n) {
      return std::pow(p, static_cast<double>(n)) / (qpoch_finite(q.value(), q, n) * qpoch_finite(b, q, n));
    });
  }
  s.sup_bound = detail::kSupSlack / den;
  std::ostringstream label;
  label << "qbessel" << kind << "(nu=" << nu << ")";
  s.label = label.str();
  out.series = std::move(s);
  out.prefactor = qpoch_infinite(b, q) / qpoch_infinite(q.value(), q) * std::pow(2.0, -nu);
  return out;
}

/// Bessel argument -> series variable.
inline Complex qbessel_w_from_z(Complex z) { return -z * z / 4.0; }

/// The two Bessel arguments z = +-2 sqrt(-w) belonging to a series zero w.
inline std::pair<Complex, Complex> qbessel_z_from_w(Complex w) {
  const Complex r = 2.0 * std::sqrt(-w);
  return {r, -r};
}

inline Complex qbessel_entire_value(const QBessel& qb, Complex z, double tol = 1e-15) {
  return qb.prefactor * eval(qb.series, qbessel_w_from_z(z), tol).value;
}

/// sum q^{a(n)} b_n^{it} z^n written as sum h_n q^{alpha n^2} z^n with
/// h_n = q^{a(n) - alpha n^2} b_n^{it}.
inline SeriesSpec make_oscillatory(std::vector<double> a_coeffs, std::function<double(std::size_t)> b_seq,
                                   double t, const QBase& q, double alpha) {
  if (!q.is_real_positive()) fail(ErrorKind::domain, "oscillatory series requires real q in (0,1)");
  if (!(alpha > 0.0)) fail(ErrorKind::domain, "oscillatory series requires alpha > 0");
  while (!a_coeffs.empty() && a_coeffs.back() == 0.0) a_coeffs.pop_back();
  if (a_coeffs.size() < 3) fail(ErrorKind::domain, "exponent polynomial must have degree k >= 2");
  const std::size_t k = a_coeffs.size() - 1;
  if (!(a_coeffs.back() > 0.0)) fail(ErrorKind::domain, "leading exponent coefficient a_k must be positive");
  if (k == 2 && alpha > a_coeffs[2])
    fail(ErrorKind::domain, "k = 2 requires alpha <= a_2, otherwise sup |f_n| is infinite");
  if (k == 2 && alpha == a_coeffs[2] && a_coeffs[1] < 0.0)
    fail(ErrorKind::domain, "k = 2, alpha = a_2 with a_1 < 0 gives unbounded coefficients");

  // e(n) = a(n) - alpha n^2
  std::vector<double> e = a_coeffs;
  e[2] -= alpha;
  auto exponent = [e](double n) {
    double v = 0.0;
    for (auto it = e.rbegin(); it != e.rend(); ++it) v = v * n + *it;
    return v;
  };
  // Past the Cauchy root bound of e'(x), e is monotone increasing.
  std::vector<double> de;
  for (std::size_t j = 1; j < e.size(); ++j) de.push_back(static_cast<double>(j) * e[j]);
  while (!de.empty() && de.back() == 0.0) de.pop_back();
  double root_bound = 0.0;
  if (de.size() > 1) {
    for (std::size_t j = 0; j + 1 < de.size(); ++j) root_bound = std::max(root_bound, std::abs(de[j] / de.back()));
    root_bound += 1.0;
  }
  double min_e = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; static_cast<double>(n) <= root_bound + 1.0; ++n) min_e = std::min(min_e, exponent(n));

  const double qv = q.value().real();
  SeriesSpec s;
  s.q = q;
  s.alpha = alpha;
  s.coeff = [exponent, b_seq, t, qv](std::size_t n) {
    const double b = b_seq(n);
    if (!(b > 0.0)) fail(ErrorKind::domain, "oscillatory series requires b_n > 0");
    return std::pow(qv, exponent(static_cast<double>(n))) * std::polar(1.0, t * std::log(b));
  };
  s.sup_bound = std::pow(qv, min_e) * detail::kSupSlack;
  s.label = "oscillatory";
  return s;
}

/// H_0..H_nmax via H_{n+1} = 2x H_n - (1 - q^n) H_{n-1}.
inline std::vector<Complex> q_hermite_all(std::size_t nmax, Complex x, const QBase& q) {
  std::vector<Complex> h(nmax + 1);
  h[0] = 1.0;
  if (nmax >= 1) h[1] = 2.0 * x;
  Complex qn = q.value();
  for (std::size_t n = 1; n < nmax; ++n) {
    h[n + 1] = 2.0 * x * h[n] - (1.0 - qn) * h[n - 1];
    qn *= q.value();
  }
  return h;
}

inline Complex q_hermite(std::size_t n, Complex x, const QBase& q) { return q_hermite_all(n, x, q)[n]; }

/// q-Laguerre polynomial
/// L_n^{(a)}(z;q) = sum_k q^{k^2 + k a} (q^{a+k+1};q)_{n-k} / ((q;q)_{n-k} (q;q)_k) (-z)^k.
inline Complex q_laguerre(std::size_t n, double a, Complex z, const QBase& q) {
  Complex sum(0.0);
  Complex mz_k(1.0);
  for (std::size_t k = 0; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const Complex c = q.pow(kk * kk + kk * a) * qpoch_finite(q.pow(a + kk + 1.0), q, n - k) /
                      (qpoch_finite(q.value(), q, n - k) * qpoch_finite(q.value(), q, k));
    sum += c * mz_k;
    mz_k *= -z;
  }
  return sum;
}

namespace detail {

inline double require_real_q(const QBase& q, const char* what) {
  if (!q.is_real_positive()) fail(ErrorKind::domain, std::string(what) + " requires real q in (0,1)");
  return q.value().real();
}

}  // namespace detail

/// E_q(z;t) = (qt^2;q^2)_inf^{-1} sum q^{n^2/4} t^n H_n(z|q) / (q;q)_n, |t| < 1,
/// real q in (0,1). The Hermite recurrence runs in scaled form
/// h_n = H_n / s^n so arbitrarily large |z| stays in range.
inline LogEvalResult eval_Eqzt_log(Complex z, Complex t, const QBase& q, double tol = 1e-15) {
  const double qv = detail::require_real_q(q, "E_q(z;t)");
  if (!(std::abs(t) < 1.0)) fail(ErrorKind::domain, "E_q(z;t) requires |t| < 1");
  if (!(tol > 0.0)) fail(ErrorKind::domain, "tolerance must be positive");
  const LogComplex prefactor = qpoch_infinite_log(qv * t * t, QBase(qv * qv));
  LogEvalResult out;
  if (t == Complex(0.0)) {
    out.value = LogComplex::from_parts(0.0, 0.0) / prefactor;
    out.terms_used = 1;
    return out;
  }
  const double lq = std::log(qv);
  const double log_t = std::log(std::abs(t));
  const double arg_t = std::arg(t);
  const double s = std::max(1.0, std::abs(2.0 * z));
  const double log_s = std::log(s);
  // |H_n(x|q)| <= (n+1) u^n / (q;q)_inf^2 with u = |x| + sqrt(|x|^2 + 1).
  const double u = std::abs(z) + std::sqrt(std::norm(z) + 1.0);
  const double log_qq_inf = qpoch_infinite_log(Complex(qv), q).log_mag;
  auto log_bound = [&](std::size_t n, double log_qq_n) {
    const double nn = static_cast<double>(n);
    return 0.25 * nn * nn * lq + nn * log_t + std::log(nn + 1.0) + nn * std::log(u) - 2.0 * log_qq_inf - log_qq_n;
  };

  StableAccumulator acc;
  Complex h_prev(0.0);
  Complex h(1.0);
  double log_h_shift = 0.0;  // h_n stored as exp(log_h_shift) * h
  double log_qq_n = 0.0;
  double log_peak_bound = -std::numeric_limits<double>::infinity();
  double abs_sum = 0.0, abs_ref = -std::numeric_limits<double>::infinity();
  std::vector<double> mags;
  double qn = 1.0;  // q^n
  const std::size_t cap = 1u << 16;
  for (std::size_t n = 0;; ++n) {
    const double nn = static_cast<double>(n);
    if (h != Complex(0.0)) {
      const double lm = 0.25 * nn * nn * lq + nn * (log_t + log_s) + log_h_shift + std::log(std::abs(h)) - log_qq_n;
      const LogComplex term = LogComplex::from_parts(lm, nn * arg_t + std::arg(h));
      acc.add(term);
      mags.push_back(lm);
      abs_ref = std::max(abs_ref, lm);
    }
    const double b = log_bound(n, log_qq_n);
    log_peak_bound = std::max(log_peak_bound, b);
    const double log_qq_next = log_qq_n + std::log1p(-qn * qv);
    const double next = log_bound(n + 1, log_qq_next);
    if (next - b <= std::log(0.5) && next < std::log(tol) + std::max(0.0, log_peak_bound)) {
      out.terms_used = n + 1;
      out.log_abs_error = next + std::log(2.0);
      break;
    }
    if (n >= cap) fail(ErrorKind::non_convergence, "E_q(z;t) series did not reach tolerance");
    // advance the scaled recurrence: h_{n+1} = (2z/s) h_n - (1 - q^n) h_{n-1} / s^2
    const Complex h_next = (n == 0) ? (2.0 * z / s) * h : (2.0 * z / s) * h - (1.0 - qn) * h_prev / (s * s);
    h_prev = h;
    h = h_next;
    const double m = std::max(std::abs(h), std::abs(h_prev));
    if (m > 1e100 || (m < 1e-100 && m > 0.0)) {
      h /= m;
      h_prev /= m;
      log_h_shift += std::log(m);
    }
    log_qq_n = log_qq_next;
    qn *= qv;
  }
  for (double m : mags) abs_sum += std::exp(m - abs_ref);
  const double log_round = std::isfinite(abs_ref)
                               ? abs_ref + std::log(4.0 * static_cast<double>(out.terms_used + 1) * kEps * abs_sum)
                               : -std::numeric_limits<double>::infinity();
  out.log_abs_error = std::max(out.log_abs_error, log_round) + std::log(2.0);
  out.log_abs_error -= prefactor.log_mag;
  out.log_scale = abs_ref - prefactor.log_mag;
  out.value = acc.result() / prefactor;
  return out;
}

inline EvalResult eval_Eqzt(Complex z, Complex t, const QBase& q, double tol = 1e-15) {
  const LogEvalResult r = eval_Eqzt_log(z, t, q, tol);
  if (r.log_scale > kMaxLogMagnitude) fail(ErrorKind::overflow, "E_q(z;t) peak term overflows; use eval_Eqzt_log");
  return detail::to_eval_result(r);
}

/// L(z;alpha,q) as the type-(1.1) series with base q, exponent 5/2 and
/// f_n = (-q^{2alpha-1/2})^n A_{q^2}(-q^{4n+2alpha}) / (q;q)_n. When
/// 2alpha - 1/2 < 0 the geometric factor moves into the variable scale.
inline SeriesSpec make_Lalpha(double alpha, const QBase& q) {
  if (!(alpha > 0.0)) fail(ErrorKind::domain, "L(z;alpha,q) requires alpha > 0");
  const double e = 2.0 * alpha - 0.5;
  const bool absorb = e >= 0.0;
  const QBase q2 = q.squared();
  const SeriesSpec a_q2 = make_Aq(q2);
  SeriesSpec s;
  s.q = q;
  s.alpha = 2.5;
  s.coeff = memoize([q, a_q2, alpha, e, absorb](std::size_t n) {
    const double nn = static_cast<double>(n);
    const Complex a_val = eval(a_q2, -q.pow(4.0 * nn + 2.0 * alpha), 1e-17).value;
    Complex v = a_val / qpoch_finite(q.value(), q, n);
    if (absorb) v *= q.pow(e * nn);
    return (n % 2 == 0) ? v : -v;
  });
  const double qm = q.modulus();
  const SeriesSpec a_abs = make_Aq(QBase(qm * qm));
  const double a_bound = std::abs(eval(a_abs, Complex(-std::pow(qm, 2.0 * alpha)), 1e-17).value);
  s.sup_bound = a_bound * detail::inverse_qq_bound(q) * detail::kSupSlack;
  if (!absorb) s.variable_scale = q.pow(-e);
  std::ostringstream label;
  label << "Lalpha(alpha=" << alpha << ")";
  s.label = label.str();
  return s;
}

struct LaguerreIdentityReport {
  Complex lhs;
  Complex rhs;
  double rel_diff = 0.0;
  double lhs_error = 0.0;
  double rhs_error = 0.0;
  std::size_t lhs_terms = 0;
};

/// Both sides of
///   sum_n (q^{alpha+2n+1/2};q)_inf L_n^{(alpha+n-1/2)}(z;q) q^{n^2/2 + alpha n}
///     = sum_n (-z q^{2alpha-1/2})^n q^{5n^2/2} / (q;q)_n A_{q^2}(-q^{4n+2alpha}),
/// each with a certified truncation.
inline LaguerreIdentityReport verify_laguerre_identity(Complex z, double alpha, const QBase& q, double tol = 1e-14) {
  const double qv = detail::require_real_q(q, "Laguerre identity");
  if (!(alpha > 0.0)) fail(ErrorKind::domain, "Laguerre identity requires alpha > 0");
  // For n >= 1 every term is bounded by Lambda q^{n^2/2 + alpha n} with
  // Lambda = sum_k q^{k^2} |z|^k / (q;q)_inf^2.
  const double qq_inf = std::abs(qpoch_infinite(Complex(qv), q));
  double lambda = 0.0;
  for (std::size_t k = 0;; ++k) {
    const double kk = static_cast<double>(k);
    const double term = std::pow(qv, kk * kk) * std::pow(std::abs(z), kk);
    lambda += term;
    if (static_cast<double>(k) > 1.0 && term < 1e-18 * lambda && std::pow(qv, 2.0 * kk + 1.0) * std::abs(z) < 0.5)
      break;
    if (k > 100000) fail(ErrorKind::non_convergence, "Laguerre bound did not converge");
  }
  lambda /= qq_inf * qq_inf;

  LaguerreIdentityReport rep;
  Complex sum(0.0);
  for (std::size_t n = 0;; ++n) {
    const double nn = static_cast<double>(n);
    const Complex term = qpoch_infinite(q.pow(alpha + 2.0 * nn + 0.5), q) *
                         q_laguerre(n, alpha + nn - 0.5, z, q) * std::pow(qv, 0.5 * nn * nn + alpha * nn);
    sum += term;
    const double m1 = nn + 1.0;
    const double next_bound = lambda * std::pow(qv, 0.5 * m1 * m1 + alpha * m1);
    const double ratio = std::pow(qv, 0.5 * (2.0 * m1 + 1.0) + alpha);
    if (n >= 1 && ratio <= 0.5 && 2.0 * next_bound < tol * std::max(1.0, std::abs(sum))) {
      rep.lhs_terms = n + 1;
      rep.lhs_error = 2.0 * next_bound;
      break;
    }
    if (n > 4096) fail(ErrorKind::non_convergence, "Laguerre-side series did not converge");
  }
  rep.lhs = sum;
  const EvalResult r = eval(make_Lalpha(alpha, q), z, tol);
  rep.rhs = r.value;
  rep.rhs_error = r.abs_error;
  rep.rel_diff = std::abs(rep.lhs - rep.rhs) / std::max(std::abs(rep.rhs), std::numeric_limits<double>::min());
  return rep;
}

}  // namespace qzeros
