#pragma once

// Foundational q-arithmetic: q-shifted factorials, the theta sum used by the
// modulus envelope, and log-scaled compensated summation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "qzeros/errors.hpp"

namespace qzeros {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEps = std::numeric_limits<double>::epsilon();
// Largest log-magnitude that still converts to a finite double.
inline constexpr double kMaxLogMagnitude = 709.0;

/// Maps an angle to the principal interval (-pi, pi].
inline double wrap_phase(double phase) {
  double w = std::remainder(phase, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// A complex number stored as (log|z|, arg z). Zero is log_mag = -inf.
struct LogComplex {
  double log_mag = -std::numeric_limits<double>::infinity();
  double phase = 0.0;

  static LogComplex zero() { return {}; }

  static LogComplex from_complex(Complex z) {
    if (z == Complex(0.0)) return zero();
    return {std::log(std::abs(z)), wrap_phase(std::arg(z))};
  }

  static LogComplex from_parts(double log_mag, double phase) {
    if (std::isinf(log_mag) && log_mag < 0) return zero();
    return {log_mag, wrap_phase(phase)};
  }

  bool is_zero() const { return std::isinf(log_mag) && log_mag < 0; }

  /// Converts back to a complex value; throws an overflow error when the
  /// magnitude is not representable.
  Complex to_complex() const {
    if (is_zero()) return Complex(0.0);
    if (log_mag > kMaxLogMagnitude) {
      std::ostringstream os;
      os << "log-magnitude " << log_mag << " exceeds double range";
      fail(ErrorKind::overflow, os.str());
    }
    return std::polar(std::exp(log_mag), phase);
  }

  friend LogComplex operator*(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return from_parts(a.log_mag + b.log_mag, a.phase + b.phase);
  }

  friend LogComplex operator/(const LogComplex& a, const LogComplex& b) {
    if (b.is_zero()) fail(ErrorKind::domain, "division by a zero LogComplex");
    if (a.is_zero()) return zero();
    return from_parts(a.log_mag - b.log_mag, a.phase - b.phase);
  }
};

/// Base q of a q-series; 0 < |q| < 1. Complex powers use the principal log.
class QBase {
 public:
  explicit QBase(Complex q) : q_(q) {
    const double m = std::abs(q);
    if (!is_finite(q) || !(m > 0.0) || !(m < 1.0)) {
      std::ostringstream os;
      os << "base q must satisfy 0 < |q| < 1, got " << q;
      fail(ErrorKind::domain, os.str());
    }
    log_ = std::log(q);
  }
  explicit QBase(double q) : QBase(Complex(q, 0.0)) {}

  Complex value() const { return q_; }
  double modulus() const { return std::abs(q_); }
  // Principal log q; real part is log|q| < 0.
  Complex log() const { return log_; }
  bool is_real_positive() const { return q_.imag() == 0.0 && q_.real() > 0.0; }

  Complex pow(double e) const { return std::exp(e * log_); }
  Complex pow(Complex e) const { return std::exp(e * log_); }
  QBase squared() const { return QBase(q_ * q_); }

 private:
  Complex q_;
  Complex log_;
};

namespace detail {

// Neumaier-compensated running sum of doubles.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  void scale(double s) {
    sum_ *= s;
    comp_ *= s;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Bound on |sum_{k>=K} log(1 - a q^k)| given |a||q|^K < 1.
inline double qpoch_log_tail_bound(double abs_a_qK, double q_mod) {
  if (abs_a_qK >= 1.0) return std::numeric_limits<double>::infinity();
  return abs_a_qK / ((1.0 - q_mod) * (1.0 - abs_a_qK));
}

inline constexpr std::size_t kMaxProductFactors = 10'000'000;

}  // namespace detail

/// Accumulates LogComplex terms relative to the running peak magnitude with
/// compensated summation of the residuals.
class StableAccumulator {
 public:
  void add(const LogComplex& term) {
    if (term.is_zero()) return;
    ++count_;
    if (count_ == 1) single_ = term;
    if (term.log_mag > peak_) {
      if (std::isfinite(peak_)) {
        const double s = std::exp(peak_ - term.log_mag);
        re_.scale(s);
        im_.scale(s);
      }
      peak_ = term.log_mag;
    }
    const double m = std::exp(term.log_mag - peak_);
    re_.add(m * std::cos(term.phase));
    im_.add(m * std::sin(term.phase));
  }

  LogComplex result() const {
    if (count_ == 0) return LogComplex::zero();
    if (count_ == 1) return single_;
    const Complex s(re_.value(), im_.value());
    if (s == Complex(0.0)) return LogComplex::zero();
    return LogComplex::from_parts(peak_ + std::log(std::abs(s)), std::arg(s));
  }

  // Largest term log-magnitude seen so far.
  double peak_log() const { return peak_; }
  std::size_t count() const { return count_; }

 private:
  double peak_ = -std::numeric_limits<double>::infinity();
  detail::CompensatedSum re_;
  detail::CompensatedSum im_;
  std::size_t count_ = 0;
  LogComplex single_;
};

/// Sum of log-scaled terms. Exact for a single term.
inline LogComplex stable_sum(std::span<const LogComplex> terms) {
  // Two passes: fixing the peak first keeps every residual in [0,1].
  double peak = -std::numeric_limits<double>::infinity();
  std::size_t nonzero = 0;
  const LogComplex* last = nullptr;
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    ++nonzero;
    last = &t;
    peak = std::max(peak, t.log_mag);
  }
  if (nonzero == 0) return LogComplex::zero();
  if (nonzero == 1) return *last;
  detail::CompensatedSum re, im;
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    const double m = std::exp(t.log_mag - peak);
    re.add(m * std::cos(t.phase));
    im.add(m * std::sin(t.phase));
  }
  const Complex s(re.value(), im.value());
  if (s == Complex(0.0)) return LogComplex::zero();
  return LogComplex::from_parts(peak + std::log(std::abs(s)), std::arg(s));
}

/// (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k).
inline Complex qpoch_finite(Complex a, const QBase& q, std::size_t n) {
  Complex p(1.0);
  Complex aqk = a;
  for (std::size_t k = 0; k < n; ++k) {
    p *= 1.0 - aqk;
    aqk *= q.value();
  }
  return p;
}

/// (a;q)_infinity as a log-scaled value, truncated once the analytic tail
/// bound on the remaining log-sum drops below tol.
inline LogComplex qpoch_infinite_log(Complex a, const QBase& q, double tol = 1e-15) {
  if (!(tol > 0.0)) fail(ErrorKind::domain, "qpoch_infinite: tol must be positive");
  const double qm = q.modulus();
  double log_mag = 0.0;
  double phase = 0.0;
  Complex aqk = a;
  for (std::size_t k = 0; k < detail::kMaxProductFactors; ++k) {
    if (detail::qpoch_log_tail_bound(std::abs(aqk), qm) < tol) {
      return LogComplex::from_parts(log_mag, phase);
    }
    const Complex factor = 1.0 - aqk;
    if (factor == Complex(0.0)) return LogComplex::zero();
    log_mag += std::log(std::abs(factor));
    phase += std::arg(factor);
    aqk *= q.value();
  }
  fail(ErrorKind::non_convergence, "qpoch_infinite: tail bound not reached");
}

/// (a;q)_infinity = prod_{k>=0} (1 - a q^k).
inline Complex qpoch_infinite(Complex a, const QBase& q, double tol = 1e-15) {
  if (!(tol > 0.0)) fail(ErrorKind::domain, "qpoch_infinite: tol must be positive");
  const double qm = q.modulus();
  Complex p(1.0);
  Complex aqk = a;
  for (std::size_t k = 0; k < detail::kMaxProductFactors; ++k) {
    if (detail::qpoch_log_tail_bound(std::abs(aqk), qm) < tol) break;
    p *= 1.0 - aqk;
    if (p == Complex(0.0)) return p;
    if (!is_finite(p)) fail(ErrorKind::overflow, "qpoch_infinite overflowed; use qpoch_infinite_log");
    aqk *= q.value();
    if (k + 1 == detail::kMaxProductFactors)
      fail(ErrorKind::non_convergence, "qpoch_infinite: tail bound not reached");
  }
  return p;
}

/// (a_1,...,a_r;q)_n; n = nullopt means n = infinity.
inline Complex multi_qpoch(std::span<const Complex> as, const QBase& q,
                           std::optional<std::size_t> n, double tol = 1e-15) {
  Complex p(1.0);
  for (const Complex a : as) p *= n ? qpoch_finite(a, q, *n) : qpoch_infinite(a, q, tol);
  return p;
}

/// theta(x) = sum_{n in Z} x^{n^2/2} for 0 <= x < 1.
inline double theta_sum(double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    std::ostringstream os;
    os << "theta_sum requires 0 <= x < 1, got " << x;
    fail(ErrorKind::domain, os.str());
  }
  if (x == 0.0) return 1.0;
  const double lx = std::log(x);
  double sum = 1.0;
  for (std::size_t n = 1;; ++n) {
    const double nn = static_cast<double>(n);
    const double term = 2.0 * std::exp(0.5 * nn * nn * lx);
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

}  // namespace qzeros
