#pragma once

// Zero-free and positivity regions of the q-plane wave E_q(cos theta; t),
// its 2phi1 representation, and the growth constant of log M(r, E_q).
// Real q in (0,1) throughout.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qzeros/bounds.hpp"
#include "qzeros/catalog.hpp"
#include "qzeros/errors.hpp"
#include "qzeros/parallel.hpp"
#include "qzeros/qcore.hpp"

namespace qzeros {

struct TwoPhiOneResult {
  Complex value;       // E_q(cos theta; t)
  Complex series_sum;  // the 2phi1 sum
  Complex prefactor;   // (-t; q^{1/2})_inf / (q t^2; q^2)_inf
  double abs_error = 0.0;
  std::size_t terms_used = 0;
};

namespace detail {

inline double real_q(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    std::ostringstream os;
    os << "regions require real q in (0,1), got " << q;
    fail(ErrorKind::domain, os.str());
  }
  return q;
}

// (1 + q^{1/4} e^{-Im theta})(1 + q^{1/4} e^{Im theta})
inline double strip_factor(Complex theta, double q) {
  const double q4 = std::pow(q, 0.25);
  return (1.0 + q4 * std::exp(-theta.imag())) * (1.0 + q4 * std::exp(theta.imag()));
}

inline double cosh_factor(Complex theta) {
  return (1.0 + std::exp(2.0 * theta.imag())) * (1.0 + std::exp(-2.0 * theta.imag()));
}

}  // namespace detail

/// E_q(cos theta; t) from
///   (qt^2;q^2)_inf / (-t;q^{1/2})_inf E_q(cos theta; t)
///     = 2phi1(q^{1/4}e^{i theta}, q^{1/4}e^{-i theta}; -q^{1/2} | q^{1/2}, -t).
/// The tail after index n is bounded geometrically with ratio
/// |t| (1 + |a| p^n)(1 + |b| p^n) / (1 - q^{n+1}), p = q^{1/2}.
inline TwoPhiOneResult eval_Eqzt_2phi1(Complex theta, Complex t, double q, double tol = 1e-15) {
  detail::real_q(q);
  if (!(std::abs(t) < 1.0)) fail(ErrorKind::domain, "2phi1 route requires |t| < 1");
  const double p = std::sqrt(q);
  const double q4 = std::pow(q, 0.25);
  const Complex a = q4 * std::exp(Complex(0.0, 1.0) * theta);
  const Complex b = q4 * std::exp(Complex(0.0, -1.0) * theta);
  const double abs_a = std::abs(a), abs_b = std::abs(b), abs_t = std::abs(t);

  TwoPhiOneResult out;
  Complex c(1.0);
  Complex sum(1.0);
  double pn = 1.0;  // p^n
  for (std::size_t n = 0;; ++n) {
    // ratio bound for every later term
    const double gamma_n = abs_t * (1.0 + abs_a * pn * p) * (1.0 + abs_b * pn * p) / (1.0 - pn * pn * q);
    if (gamma_n < 1.0) {
      const double tail = std::abs(c) * gamma_n / (1.0 - gamma_n);
      if (tail < tol * std::max(1.0, std::abs(sum))) {
        out.terms_used = n + 1;
        out.abs_error = tail;
        break;
      }
    }
    if (n > 100000) fail(ErrorKind::non_convergence, "2phi1 series did not converge");
    // c_{n+1} = c_n (1 - a p^n)(1 - b p^n) / ((1 + p^{n+1})(1 - p^{n+1})) (-t)
    const double pn1 = pn * p;
    c *= (1.0 - a * pn) * (1.0 - b * pn) / ((1.0 + pn1) * (1.0 - pn1)) * (-t);
    sum += c;
    pn = pn1;
  }
  out.series_sum = sum;
  out.prefactor = qpoch_infinite(-t, QBase(p)) / qpoch_infinite(q * t * t, QBase(q * q));
  out.value = out.prefactor * sum;
  out.abs_error *= std::abs(out.prefactor);
  return out;
}

/// (1-q) / (2 (1 + q^{1/4} e^{-Im theta})(1 + q^{1/4} e^{Im theta})).
inline double zero_free_t_bound(Complex theta, double q) {
  detail::real_q(q);
  return (1.0 - q) / (2.0 * detail::strip_factor(theta, q));
}

/// sqrt((1-q)(1-q^2) / (2q (1 + e^{2 Im theta})(1 + e^{-2 Im theta}))).
inline double positivity_re_bound(Complex theta, double q) {
  detail::real_q(q);
  return std::sqrt((1.0 - q) * (1.0 - q * q) / (2.0 * q * detail::cosh_factor(theta)));
}

/// sqrt((1-q)(1-q^3) / (2q (1 + e^{2 Im theta})(1 + e^{-2 Im theta}))).
inline double positivity_im_bound(Complex theta, double q) {
  detail::real_q(q);
  return std::sqrt((1.0 - q) * (1.0 - q * q * q) / (2.0 * q * detail::cosh_factor(theta)));
}

enum class RegionKind { zero_free, re_positivity, im_positivity };

inline const char* to_string(RegionKind k) {
  switch (k) {
    case RegionKind::zero_free: return "zero-free";
    case RegionKind::re_positivity: return "re-positivity";
    case RegionKind::im_positivity: return "im-positivity";
  }
  return "unknown";
}

inline double region_t_bound(RegionKind kind, Complex theta, double q) {
  switch (kind) {
    case RegionKind::zero_free: return zero_free_t_bound(theta, q);
    case RegionKind::re_positivity: return positivity_re_bound(theta, q);
    case RegionKind::im_positivity: return positivity_im_bound(theta, q);
  }
  return 0.0;
}

struct RegionPoint {
  Complex theta;
  double t = 0.0;
};

struct RegionGrid {
  double q = 0.5;
  std::vector<RegionPoint> points;
};

/// theta_k = pi (k + 1/2) / count; avoids cos theta = 0 for even counts.
inline std::vector<Complex> real_theta_grid(std::size_t count) {
  std::vector<Complex> out;
  for (std::size_t k = 0; k < count; ++k)
    out.emplace_back(kPi * (static_cast<double>(k) + 0.5) / static_cast<double>(count), 0.0);
  return out;
}

/// Real parts on a coarse grid of [0, pi] times imaginary parts +-im_max/2, +-im_max.
inline std::vector<Complex> complex_strip_grid(std::size_t re_count, double im_max) {
  std::vector<Complex> out;
  const double ims[] = {-im_max, -0.5 * im_max, 0.5 * im_max, im_max};
  for (std::size_t k = 0; k < re_count; ++k) {
    const double re = kPi * (static_cast<double>(k) + 0.5) / static_cast<double>(re_count);
    for (double im : ims) out.emplace_back(re, im);
  }
  return out;
}

/// For each theta, t_count values of t, symmetric about 0 (0 excluded), with
/// |t| up to safety times the bound of the given kind.
inline RegionGrid make_region_grid(double q, const std::vector<Complex>& thetas, std::size_t t_count, double safety,
                                   RegionKind kind) {
  detail::real_q(q);
  if (!(safety > 0.0 && safety < 1.0)) fail(ErrorKind::domain, "safety must lie in (0,1)");
  RegionGrid g;
  g.q = q;
  const std::size_t pos = (t_count + 1) / 2;
  const std::size_t neg = t_count / 2;
  for (const Complex theta : thetas) {
    const double b = safety * region_t_bound(kind, theta, q);
    for (std::size_t k = 1; k <= pos; ++k) g.points.push_back({theta, b * static_cast<double>(k) / static_cast<double>(pos)});
    for (std::size_t k = 1; k <= neg; ++k) g.points.push_back({theta, -b * static_cast<double>(k) / static_cast<double>(neg)});
  }
  return g;
}

struct RegionReport {
  std::string kind;
  double min_observed = std::numeric_limits<double>::infinity();
  double min_certified = std::numeric_limits<double>::infinity();
  double max_route_discrepancy = 0.0;  // relative, zero-free check only
  bool prefactor_nonzero = true;
  std::size_t points = 0;
  bool pass = false;
  std::optional<RegionPoint> worst;  // point attaining min_observed
};

namespace detail {

inline void check_grid_bounds(const RegionGrid& grid, double safety, RegionKind kind) {
  for (const RegionPoint& pt : grid.points) {
    const double b = region_t_bound(kind, pt.theta, grid.q);
    if (std::abs(pt.t) > safety * b * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << to_string(kind) << " grid point theta = " << pt.theta << ", t = " << pt.t << " exceeds " << safety
         << " * bound " << b;
      fail(ErrorKind::precondition, os.str());
    }
  }
}

struct HermiteTerms {
  std::vector<Complex> terms;  // q^{n^2/4} t^n H_n(x|q) / (q;q)_n
  double tail = 0.0;
};

// Terms of the q-Hermite expansion of (qt^2;q^2)_inf E_q(x;t), for moderate |x|.
inline HermiteTerms hermite_expansion_terms(Complex x, Complex t, double q, double tol) {
  const QBase qb(q);
  const double u = std::abs(x) + std::sqrt(std::norm(x) + 1.0);
  const double qq_inf = std::abs(qpoch_infinite(Complex(q), qb));
  HermiteTerms out;
  Complex h_prev(0.0), h(1.0);
  double qq_n = 1.0, qn = 1.0;
  Complex t_n(1.0);
  for (std::size_t n = 0;; ++n) {
    const double nn = static_cast<double>(n);
    out.terms.push_back(std::pow(q, 0.25 * nn * nn) * t_n * h / qq_n);
    const double qq_next = qq_n * (1.0 - qn * q);
    auto bound = [&](double m, double qq) {
      return std::pow(q, 0.25 * m * m) * std::pow(std::abs(t) * u, m) * (m + 1.0) / (qq_inf * qq_inf * qq);
    };
    const double b = bound(nn, qq_n), next = bound(nn + 1.0, qq_next);
    if (next <= 0.5 * b && 2.0 * next < tol) {
      out.tail = 2.0 * next;
      return out;
    }
    if (n > 100000) fail(ErrorKind::non_convergence, "Hermite expansion did not converge");
    const Complex h_next = (n == 0) ? 2.0 * x : 2.0 * x * h - (1.0 - qn) * h_prev;
    h_prev = h;
    h = h_next;
    qq_n = qq_next;
    qn *= q;
    t_n *= t;
  }
}

}  // namespace detail

/// E_q(cos theta; t) != 0 on the grid: evaluates both representations and
/// the lower bound 1 - gamma/(1-gamma) on the 2phi1 sum, where gamma is the
/// uniform term-ratio bound |t| (1 + q^{1/4}e^{-Im theta})(1 + q^{1/4}e^{Im theta}) / (1-q).
inline RegionReport check_zero_free(const RegionGrid& grid, double safety = 0.99, double tol = 1e-14) {
  detail::check_grid_bounds(grid, safety, RegionKind::zero_free);
  const double q = grid.q;
  const QBase qb(q);
  const std::size_t n = grid.points.size();
  std::vector<double> observed(n), certified(n), discrepancy(n);
  std::vector<char> prefactor_ok(n);
  parallel_for(n, [&](std::size_t i) {
    const RegionPoint& pt = grid.points[i];
    const TwoPhiOneResult two = eval_Eqzt_2phi1(pt.theta, pt.t, q, tol);
    const Complex hermite = eval_Eqzt(std::cos(pt.theta), pt.t, qb, tol).value;
    observed[i] = std::min(std::abs(two.value), std::abs(hermite));
    discrepancy[i] = std::abs(two.value - hermite) / std::abs(hermite);
    const double gamma = std::abs(pt.t) * detail::strip_factor(pt.theta, q) / (1.0 - q);
    certified[i] = gamma < 1.0 ? 1.0 - gamma / (1.0 - gamma) : -std::numeric_limits<double>::infinity();
    prefactor_ok[i] = std::abs(two.prefactor) > 0.0 && std::isfinite(std::abs(two.prefactor));
  });
  RegionReport rep;
  rep.kind = to_string(RegionKind::zero_free);
  rep.points = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (observed[i] < rep.min_observed) {
      rep.min_observed = observed[i];
      rep.worst = grid.points[i];
    }
    rep.min_certified = std::min(rep.min_certified, certified[i]);
    rep.max_route_discrepancy = std::max(rep.max_route_discrepancy, discrepancy[i]);
    rep.prefactor_nonzero = rep.prefactor_nonzero && prefactor_ok[i];
  }
  rep.pass = n > 0 && rep.min_observed > 0.0 && rep.min_certified > 0.0 && rep.prefactor_nonzero;
  return rep;
}

/// Re E_q(cos theta; it) > 0 on the grid. Certified value:
/// 1 - sum_{n>=1} |Re T_n| - tail for the q-Hermite terms T_n; the prefactor
/// 1/(-qt^2;q^2)_inf is positive.
inline RegionReport check_positivity_re(const RegionGrid& grid, double safety = 0.99, double tol = 1e-14) {
  detail::check_grid_bounds(grid, safety, RegionKind::re_positivity);
  const double q = grid.q;
  const QBase qb(q);
  const std::size_t n = grid.points.size();
  std::vector<double> observed(n), certified(n);
  parallel_for(n, [&](std::size_t i) {
    const RegionPoint& pt = grid.points[i];
    const Complex x = std::cos(pt.theta);
    const Complex it(0.0, pt.t);
    observed[i] = eval_Eqzt(x, it, qb, tol).value.real();
    const detail::HermiteTerms ht = detail::hermite_expansion_terms(x, it, q, tol);
    double c = 1.0 - ht.tail;
    for (std::size_t k = 1; k < ht.terms.size(); ++k) c -= std::abs(ht.terms[k].real());
    certified[i] = c;
  });
  RegionReport rep;
  rep.kind = to_string(RegionKind::re_positivity);
  rep.points = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (observed[i] < rep.min_observed) {
      rep.min_observed = observed[i];
      rep.worst = grid.points[i];
    }
    rep.min_certified = std::min(rep.min_certified, certified[i]);
  }
  rep.pass = n > 0 && rep.min_observed > 0.0 && rep.min_certified > 0.0;
  return rep;
}

/// (1-q) Im E_q(cos theta; it) / (2 t q^{1/4} cos theta) > 0 on a grid of
/// real theta with cos theta != 0 and t != 0. Certified value:
/// 1 - sum_{n>=2} |Im T_n| / |Im T_1| - tail / |Im T_1|.
inline RegionReport check_positivity_im(const RegionGrid& grid, double safety = 0.99, double tol = 1e-14) {
  detail::check_grid_bounds(grid, safety, RegionKind::im_positivity);
  const double q = grid.q;
  const QBase qb(q);
  for (const RegionPoint& pt : grid.points) {
    if (pt.theta.imag() != 0.0) fail(ErrorKind::precondition, "im-positivity requires real theta");
    if (pt.t == 0.0) fail(ErrorKind::precondition, "im-positivity ratio is undefined at t = 0");
    if (std::abs(std::cos(pt.theta.real())) < 1e-12)
      fail(ErrorKind::precondition, "im-positivity ratio is undefined at cos theta = 0");
  }
  const double q4 = std::pow(q, 0.25);
  const std::size_t n = grid.points.size();
  std::vector<double> observed(n), certified(n);
  parallel_for(n, [&](std::size_t i) {
    const RegionPoint& pt = grid.points[i];
    const double x = std::cos(pt.theta.real());
    const Complex it(0.0, pt.t);
    const Complex e = eval_Eqzt(x, it, qb, tol).value;
    observed[i] = (1.0 - q) * e.imag() / (2.0 * pt.t * q4 * x);
    const detail::HermiteTerms ht = detail::hermite_expansion_terms(x, it, q, tol);
    const double lead = std::abs(ht.terms[1].imag());
    double c = 1.0 - ht.tail / lead;
    for (std::size_t k = 2; k < ht.terms.size(); ++k) c -= std::abs(ht.terms[k].imag()) / lead;
    certified[i] = c;
  });
  RegionReport rep;
  rep.kind = to_string(RegionKind::im_positivity);
  rep.points = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (observed[i] < rep.min_observed) {
      rep.min_observed = observed[i];
      rep.worst = grid.points[i];
    }
    rep.min_certified = std::min(rep.min_certified, certified[i]);
  }
  rep.pass = n > 0 && rep.min_observed > 0.0 && rep.min_certified > 0.0;
  return rep;
}

struct GrowthConstantReport {
  std::vector<double> radii;
  std::vector<double> log_M;
  std::vector<double> ratios;  // log M(r) / log^2 r
  double target = 0.0;         // 1 / log(1/q)
  bool increasing = false;     // ratios strictly increasing in r
  bool approaching = false;    // |ratio - target| strictly decreasing in r
  double final_relative_error = 0.0;
};

/// log M(r, E_q(.;t)) / log^2 r against 1/log(1/q), using log-scaled
/// evaluation and max(64, 8 N(r)) angles per radius.
inline GrowthConstantReport growth_constant_check(double q, Complex t, const std::vector<double>& r_grid) {
  detail::real_q(q);
  const QBase qb(q);
  GrowthConstantReport rep;
  rep.radii = r_grid;
  rep.target = 1.0 / std::log(1.0 / q);
  rep.log_M.assign(r_grid.size(), 0.0);
  rep.ratios.assign(r_grid.size(), 0.0);
  parallel_for(r_grid.size(), [&](std::size_t i) {
    const double r = r_grid[i];
    if (!(r > 1.0)) fail(ErrorKind::domain, "growth constant radii must exceed 1");
    const std::size_t terms = eval_Eqzt_log(Complex(r), t, qb).terms_used;
    const std::size_t samples = std::max<std::size_t>(64, 8 * terms);
    rep.log_M[i] = log_max_modulus_of([&](Complex z) { return eval_Eqzt_log(z, t, qb); }, r, samples);
    rep.ratios[i] = rep.log_M[i] / std::pow(std::log(r), 2.0);
  });
  rep.increasing = true;
  rep.approaching = true;
  for (std::size_t i = 1; i < rep.ratios.size(); ++i) {
    rep.increasing = rep.increasing && rep.ratios[i] > rep.ratios[i - 1];
    rep.approaching =
        rep.approaching && std::abs(rep.ratios[i] - rep.target) < std::abs(rep.ratios[i - 1] - rep.target);
  }
  if (!rep.ratios.empty()) rep.final_relative_error = std::abs(rep.ratios.back() - rep.target) / rep.target;
  return rep;
}

}  // namespace qzeros
