#pragma once

// Polynomial root solvers used on truncated q-series.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qzeros/errors.hpp"
#include "qzeros/qcore.hpp"

namespace qzeros {

enum class RootMethod { aberth, companion };

namespace detail {

struct NewtonRatio {
  Complex ratio;     // p(z) / p'(z)
  bool converged;    // |p(z)| within the rounding bound
};

// p/p' at z; for |z| > 1 the reversed polynomial keeps the powers bounded.
inline NewtonRatio newton_ratio(std::span<const Complex> c, Complex z) {
  const std::size_t d = c.size() - 1;
  if (std::abs(z) <= 1.0) {
    Complex p = c[d], dp(0.0);
    double bound = std::abs(c[d]);
    const double az = std::abs(z);
    for (std::size_t k = d; k-- > 0;) {
      dp = dp * z + p;
      p = p * z + c[k];
      bound = bound * az + std::abs(c[k]);
    }
    const bool conv = std::abs(p) <= 8.0 * static_cast<double>(d + 1) * kEps * bound;
    if (dp == Complex(0.0)) return {Complex(0.0), conv};
    return {p / dp, conv};
  }
  // p(z) = z^d rev(1/z), rev(w) = sum c_{d-k} w^k
  const Complex w = 1.0 / z;
  Complex r = c[0], dr(0.0);
  double bound = std::abs(c[0]);
  const double aw = std::abs(w);
  for (std::size_t k = 1; k <= d; ++k) {
    dr = dr * w + r;
    r = r * w + c[k];
    bound = bound * aw + std::abs(c[k]);
  }
  const bool conv = std::abs(r) <= 8.0 * static_cast<double>(d + 1) * kEps * bound;
  // p'/p = d/z - rev'(w) / (z^2 rev(w))
  const Complex denom = static_cast<double>(d) * r - w * dr;  // z * p'/p * rev
  if (denom == Complex(0.0)) return {Complex(0.0), conv};
  return {z * r / denom, conv};
}

// Starting points on circles whose radii come from the upper convex hull of
// (k, log|c_k|) (the Newton polygon).
inline std::vector<Complex> newton_polygon_starts(std::span<const Complex> c) {
  const std::size_t d = c.size() - 1;
  std::vector<std::size_t> idx;
  std::vector<double> lg;
  for (std::size_t k = 0; k <= d; ++k) {
    if (c[k] == Complex(0.0)) continue;
    const double y = std::log(std::abs(c[k]));
    while (idx.size() >= 2) {
      const std::size_t i1 = idx[idx.size() - 2], i2 = idx.back();
      const double y1 = lg[lg.size() - 2], y2 = lg.back();
      // remove i2 if it lies on or below the segment i1 -> k
      const double cross = (y2 - y1) * static_cast<double>(k - i1) - (y - y1) * static_cast<double>(i2 - i1);
      if (cross <= 0.0) {
        idx.pop_back();
        lg.pop_back();
      } else {
        break;
      }
    }
    idx.push_back(k);
    lg.push_back(y);
  }
  std::vector<Complex> starts;
  starts.reserve(d);
  const double sigma = 0.7;
  for (std::size_t h = 0; h + 1 < idx.size(); ++h) {
    const std::size_t m = idx[h + 1] - idx[h];
    const double radius = std::exp((lg[h] - lg[h + 1]) / static_cast<double>(m));
    for (std::size_t j = 0; j < m; ++j) {
      const double ang = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m) +
                         2.0 * kPi * static_cast<double>(h) / static_cast<double>(d) + sigma;
      starts.push_back(std::polar(radius, ang));
    }
  }
  return starts;
}

inline std::vector<Complex> aberth_roots(std::span<const Complex> c, std::size_t max_iter = 1000) {
  const std::size_t d = c.size() - 1;
  std::vector<Complex> z = newton_polygon_starts(c);
  std::vector<bool> done(d, false);
  for (std::size_t it = 0; it < max_iter; ++it) {
    bool all_done = true;
    for (std::size_t i = 0; i < d; ++i) {
      if (done[i]) continue;
      const NewtonRatio nr = newton_ratio(c, z[i]);
      if (nr.converged) {
        done[i] = true;
        continue;
      }
      all_done = false;
      Complex s(0.0);
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      const Complex corr = nr.ratio / (1.0 - nr.ratio * s);
      z[i] -= corr;
      if (std::abs(corr) <= 2.0 * kEps * std::abs(z[i])) done[i] = true;
    }
    if (all_done) return z;
  }
  fail(ErrorKind::non_convergence, "Aberth iteration did not converge");
}

inline std::vector<Complex> companion_roots(std::span<const Complex> c) {
  const Eigen::Index d = static_cast<Eigen::Index>(c.size() - 1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) m(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) m(i, d - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(d)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  if (solver.info() != Eigen::Success) fail(ErrorKind::non_convergence, "companion eigenvalue solver failed");
  std::vector<Complex> roots(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

}  // namespace detail

/// All roots of sum_k c_k z^k (ascending coefficients), with multiplicity.
/// Leading zero coefficients lower the degree; trailing zeros give roots at 0.
inline std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs, RootMethod method = RootMethod::aberth) {
  std::size_t hi = coeffs.size();
  while (hi > 0 && coeffs[hi - 1] == Complex(0.0)) --hi;
  if (hi == 0) fail(ErrorKind::domain, "zero polynomial has no isolated roots");
  std::size_t lo = 0;
  while (coeffs[lo] == Complex(0.0)) ++lo;
  std::vector<Complex> roots(lo, Complex(0.0));
  std::vector<Complex> c(coeffs.begin() + static_cast<std::ptrdiff_t>(lo), coeffs.begin() + static_cast<std::ptrdiff_t>(hi));
  if (c.size() <= 1) return roots;
  // scale to unit peak coefficient
  double peak = 0.0;
  for (const Complex v : c) peak = std::max(peak, std::abs(v));
  for (Complex& v : c) v /= peak;
  const std::vector<Complex> found =
      method == RootMethod::aberth ? detail::aberth_roots(c) : detail::companion_roots(c);
  roots.insert(roots.end(), found.begin(), found.end());
  return roots;
}

}  // namespace qzeros
