#pragma once

// Locating, certifying and counting zeros of entire q-series; Jensen's
// formula check; fit of the asymptotic zero expansion.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qzeros/errors.hpp"
#include "qzeros/poly_roots.hpp"
#include "qzeros/qcore.hpp"
#include "qzeros/qseries.hpp"

namespace qzeros {

struct Zero {
  Complex location;
  int multiplicity = 1;
  double residual = 0.0;  // |f(location)| / peak term magnitude there
  bool winding_ok = false;
};

struct ZeroList {
  std::vector<Zero> zeros;  // ordered by modulus, then phase
  std::string label;
  double search_radius = 0.0;
  std::size_t origin_multiplicity = 0;  // order of the zero at z = 0
  int winding_total = 0;                // winding number of f on |z| = search_radius
  bool complete = false;                // winding_total == origin + sum of multiplicities

  /// Locations repeated by multiplicity, in list order (origin excluded).
  std::vector<Complex> expanded() const {
    std::vector<Complex> out;
    for (const Zero& z : zeros)
      for (int k = 0; k < z.multiplicity; ++k) out.push_back(z.location);
    return out;
  }

  std::size_t count_with_multiplicity() const {
    std::size_t n = 0;
    for (const Zero& z : zeros) n += static_cast<std::size_t>(z.multiplicity);
    return n;
  }
};

struct ZeroSearchOptions {
  RootMethod method = RootMethod::aberth;
  double cluster_relative = 1e-6;
  double boundary_relative = 1e-9;
  std::size_t newton_max_iter = 100;
  std::size_t initial_contour_points = 64;
};

namespace detail {

// Phase increments of f around a circle, refined until every increment is
// below pi/2. f maps a point to its LogEvalResult.
template <class F>
int winding_number_impl(F&& f, Complex center, double radius, std::size_t initial_points) {
  const double collision_log = std::log(1e-13);
  auto phase_at = [&](double theta) {
    const LogEvalResult r = f(center + std::polar(radius, theta));
    if (r.value.is_zero() || r.value.log_mag - r.log_scale < collision_log) {
      std::ostringstream os;
      os << "function vanishes (to rounding) on the contour |z - " << center << "| = " << radius;
      fail(ErrorKind::contour_collision, os.str());
    }
    return r.value.phase;
  };
  double total = 0.0;
  auto refine = [&](auto&& self, double ta, double pa, double tb, double pb, int depth) -> double {
    const double d = wrap_phase(pb - pa);
    if (std::abs(d) < 0.5 * kPi) return d;
    if (depth > 40) fail(ErrorKind::contour_collision, "phase tracking did not resolve near the contour");
    const double tm = 0.5 * (ta + tb);
    const double pm = phase_at(tm);
    return self(self, ta, pa, tm, pm, depth + 1) + self(self, tm, pm, tb, pb, depth + 1);
  };
  const std::size_t n = initial_points;
  const double step = 2.0 * kPi / static_cast<double>(n);
  const double p0 = phase_at(0.0);
  double prev = p0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double theta = step * static_cast<double>(k);
    const double p = (k == n) ? p0 : phase_at(theta);
    total += refine(refine, theta - step, prev, theta, p, 0);
    prev = p;
  }
  const double turns = total / (2.0 * kPi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) fail(ErrorKind::non_convergence, "winding number is not an integer");
  return static_cast<int>(rounded);
}

}  // namespace detail

/// Winding number of the series around the circle |z - center| = radius.
inline int winding_number(const SeriesSpec& s, Complex center, double radius,
                          std::size_t initial_points = 64) {
  return detail::winding_number_impl([&](Complex z) { return eval_log(s, z); }, center, radius, initial_points);
}

/// Number of zeros (with multiplicity, origin included) in |z| < R, as the
/// winding number of f on |z| = R.
inline int count_zeros(const SeriesSpec& s, double R, std::size_t initial_points = 64) {
  if (!(R > 0.0)) fail(ErrorKind::domain, "count_zeros requires R > 0");
  return winding_number(s, Complex(0.0), R, initial_points);
}

namespace detail {

inline Complex newton_refine(const SeriesSpec& g, Complex z, std::size_t max_iter) {
  for (std::size_t it = 0; it < max_iter; ++it) {
    const LogValueAndDerivative vd = eval_log_with_derivative(g, z);
    if (vd.value.value.is_zero()) return z;
    if (vd.derivative.value.is_zero()) return z;
    const Complex step = (vd.value.value / vd.derivative.value).to_complex();
    z -= step;
    if (std::abs(step) <= 4.0 * kEps * std::abs(z)) return z;
  }
  return z;
}

inline bool zero_less(const Complex& a, const Complex& b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma < mb;
  return std::arg(a) < std::arg(b);
}

}  // namespace detail

/// All zeros in |z| <= R. The normalized series is truncated on 1.2R, its
/// polynomial roots are refined by Newton on the full series, clustered into
/// multiplicities and certified by winding numbers. A zero at the origin is
/// reported separately as origin_multiplicity.
inline ZeroList find_zeros(const SeriesSpec& s, double R, double tol = 1e-10,
                           const ZeroSearchOptions& opt = {}) {
  if (!(R > 0.0)) fail(ErrorKind::domain, "find_zeros requires R > 0");
  if (!(tol > 0.0)) fail(ErrorKind::domain, "find_zeros requires tol > 0");
  const NormalizedSeries norm = normalize(s);
  const SeriesSpec& g = norm.g;

  ZeroList out;
  out.label = s.label;
  out.search_radius = R;
  out.origin_multiplicity = norm.nu;

  const TruncatedPoly poly = truncate_to_poly(g, 1.2 * R, 1e-16);
  std::vector<Complex> roots;
  if (poly.degree() >= 1) roots = polynomial_roots(poly.coefficients, opt.method);

  // Refine everything inside 1.1R; the rest only serve as neighbours.
  std::vector<Complex> refined;
  std::vector<Complex> outer;
  for (const Complex r : roots) {
    if (std::abs(r) <= 1.1 * R)
      refined.push_back(detail::newton_refine(g, r, opt.newton_max_iter));
    else
      outer.push_back(r);
  }
  std::sort(refined.begin(), refined.end(), detail::zero_less);

  // Cluster refined roots into multiplicities.
  struct Cluster {
    Complex sum;
    int count;
    Complex center() const { return sum / static_cast<double>(count); }
  };
  std::vector<Cluster> clusters;
  for (const Complex r : refined) {
    bool merged = false;
    for (Cluster& c : clusters) {
      if (std::abs(c.center() - r) <= opt.cluster_relative * std::max(std::abs(r), 1e-300)) {
        c.sum += r;
        ++c.count;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.push_back({r, 1});
  }

  std::vector<Complex> all_points;
  for (const Cluster& c : clusters) all_points.push_back(c.center());
  all_points.insert(all_points.end(), outer.begin(), outer.end());

  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const Complex loc = clusters[i].center();
    const double m = std::abs(loc);
    if (std::abs(m - R) <= opt.boundary_relative * R) {
      std::ostringstream os;
      os << "zero at " << loc << " lies within " << opt.boundary_relative << "*R of |z| = " << R;
      fail(ErrorKind::boundary_collision, os.str());
    }
    if (m > R) continue;
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < all_points.size(); ++j)
      if (j != i) nearest = std::min(nearest, std::abs(all_points[j] - loc));
    const double radius = std::min(0.5 * nearest, 0.5 * m);
    Zero z;
    z.location = loc;
    z.multiplicity = clusters[i].count;
    const LogEvalResult v = eval_log(g, loc);
    z.residual = v.value.is_zero() ? 0.0 : std::exp(v.value.log_mag - v.log_scale);
    try {
      z.winding_ok = winding_number(g, loc, radius) == z.multiplicity;
    } catch (const Error&) {
      z.winding_ok = false;
    }
    if (z.residual > tol) z.winding_ok = false;
    out.zeros.push_back(z);
  }
  std::sort(out.zeros.begin(), out.zeros.end(),
            [](const Zero& a, const Zero& b) { return detail::zero_less(a.location, b.location); });

  out.winding_total = count_zeros(g, R) + static_cast<int>(norm.nu);
  out.complete = out.winding_total == static_cast<int>(out.count_with_multiplicity() + norm.nu);
  return out;
}

/// Grows the search radius until at least `count` zeros (with multiplicity,
/// origin excluded) are found, then keeps the first `count`.
inline ZeroList find_first_zeros(const SeriesSpec& s, std::size_t count, double tol = 1e-10,
                                 const ZeroSearchOptions& opt = {}) {
  double R = std::max(1.0, std::abs(s.variable_scale));
  for (int attempt = 0; attempt < 200; ++attempt) {
    ZeroList zl;
    try {
      zl = find_zeros(s, R, tol, opt);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::boundary_collision && e.kind() != ErrorKind::contour_collision) throw;
      R *= 1.0137;
      continue;
    }
    if (zl.count_with_multiplicity() >= count) {
      // Trim to the first `count` zeros and pull the search radius in to the
      // gap after the last kept one, so the list stays complete inside it.
      std::size_t kept = 0;
      std::vector<Zero> trimmed;
      for (const Zero& z : zl.zeros) {
        if (kept >= count) break;
        trimmed.push_back(z);
        kept += static_cast<std::size_t>(z.multiplicity);
      }
      if (trimmed.size() < zl.zeros.size()) {
        const double last = std::abs(trimmed.back().location);
        const double next = std::abs(zl.zeros[trimmed.size()].location);
        zl.search_radius = 0.5 * (last + next);
        zl.winding_total = static_cast<int>(kept + zl.origin_multiplicity);
      }
      zl.zeros = std::move(trimmed);
      return zl;
    }
    R *= 2.0;
  }
  fail(ErrorKind::non_convergence, "could not collect the requested number of zeros");
}

/// Zero locations in the rescaled variable w = z / variable_scale.
inline std::vector<Complex> scaled_frame_zeros(const ZeroList& zl, const SeriesSpec& s) {
  std::vector<Complex> out = zl.expanded();
  for (Complex& z : out) z /= s.variable_scale;
  return out;
}

struct JensenReport {
  double r = 0.0;
  double integral_lhs = 0.0;
  double sum_rhs = 0.0;
  double discrepancy = 0.0;
  std::size_t quadrature_nodes = 0;
};

/// Mean of log|g| over |z| = r (trapezoid rule with node doubling) against
/// sum log(r/|rho|) over the listed zeros inside, where g is f with its
/// origin zero divided out and g(0) = 1.
inline JensenReport jensen_check(const SeriesSpec& s, double r, const ZeroList& zeros, double quad_tol = 1e-8) {
  if (!(r > 0.0)) fail(ErrorKind::domain, "jensen_check requires r > 0");
  for (const Zero& z : zeros.zeros) {
    if (std::abs(std::abs(z.location) - r) <= 1e-6 * r) {
      std::ostringstream os;
      os << "zero at " << z.location << " lies within the 1e-6*r band of |z| = " << r;
      fail(ErrorKind::precondition, os.str());
    }
  }
  const SeriesSpec g = normalize(s).g;
  JensenReport rep;
  rep.r = r;
  auto log_abs = [&](double theta) { return eval_log(g, std::polar(r, theta)).value.log_mag; };

  std::size_t n = 64;
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += log_abs(2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
  double estimate = sum / static_cast<double>(n);
  for (;;) {
    if (n >= (1u << 20)) fail(ErrorKind::non_convergence, "Jensen quadrature did not converge");
    double odd = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      odd += log_abs(2.0 * kPi * (static_cast<double>(k) + 0.5) / static_cast<double>(n));
    sum += odd;
    n *= 2;
    const double next = sum / static_cast<double>(n);
    const double change = std::abs(next - estimate);
    estimate = next;
    if (change < quad_tol) break;
  }
  rep.integral_lhs = estimate;
  rep.quadrature_nodes = n;
  double rhs = 0.0;
  for (const Zero& z : zeros.zeros) {
    const double m = std::abs(z.location);
    if (m < r) rhs += static_cast<double>(z.multiplicity) * std::log(r / m);
  }
  rep.sum_rhs = rhs;
  rep.discrepancy = std::abs(rep.integral_lhs - rep.sum_rhs);
  return rep;
}

struct HaymanFit {
  Complex d0;
  Complex d1;
  std::vector<Complex> s;          // s_n = rho_n p^{2n-1}
  std::vector<double> residuals;   // |s_n - d0 - d1 p^n|
  double d0_change = 0.0;          // |d0 from the last pair - d0 from the previous pair|
};

/// Fits rho_n = p^{1-2n} (d0 + d1 p^n + ...) to ordered zeros rho_1, rho_2, ...
/// given in the frame where the series has base p and alpha = 1.
inline HaymanFit hayman_fit(const std::vector<Complex>& zeros, double p) {
  if (zeros.size() < 4) fail(ErrorKind::insufficient_data, "hayman_fit needs at least 4 zeros");
  if (!(p > 0.0 && p < 1.0)) fail(ErrorKind::domain, "hayman_fit requires 0 < p < 1");
  HaymanFit fit;
  const std::size_t count = zeros.size();
  for (std::size_t i = 0; i < count; ++i) {
    const double n = static_cast<double>(i + 1);
    fit.s.push_back(zeros[i] * std::pow(p, 2.0 * n - 1.0));
  }
  // s_n = d0 + d1 p^n from a consecutive pair (n-1, n).
  auto pair_fit = [&](std::size_t last) {
    const double n = static_cast<double>(last + 1);
    const Complex d1 = (fit.s[last] - fit.s[last - 1]) / (std::pow(p, n) - std::pow(p, n - 1.0));
    const Complex d0 = fit.s[last] - d1 * std::pow(p, n);
    return std::pair{d0, d1};
  };
  const auto [d0, d1] = pair_fit(count - 1);
  const auto [d0_prev, d1_prev] = pair_fit(count - 2);
  (void)d1_prev;
  fit.d0 = d0;
  fit.d1 = d1;
  fit.d0_change = std::abs(d0 - d0_prev);
  for (std::size_t i = 0; i < count; ++i) {
    const double n = static_cast<double>(i + 1);
    fit.residuals.push_back(std::abs(fit.s[i] - d0 - d1 * std::pow(p, n)));
  }
  return fit;
}

}  // namespace qzeros
