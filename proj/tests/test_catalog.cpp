#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "qzeros/catalog.hpp"

using namespace qzeros;

namespace {

// t_{n+1} / t_n for the series in its native variable; the q power goes
// through its exponent so deep terms do not underflow
Complex term_ratio(const SeriesSpec& s, std::size_t n, Complex z) {
  const double nn = static_cast<double>(n);
  return s.coeff(n + 1) / s.coeff(n) * std::exp(s.alpha * (2.0 * nn + 1.0) * s.q.log()) * z / s.variable_scale;
}

// first term t_1 in the native variable at z
Complex first_term(const SeriesSpec& s, Complex z) {
  return s.coeff(1) * std::exp(s.alpha * s.q.log()) * z / s.variable_scale;
}

// Taylor coefficients of F(t) = sum c_n t^n via the discrete Fourier transform on |t| = rho.
template <class F>
std::vector<Complex> taylor_coefficients(F&& f, std::size_t count, double rho = 0.5, std::size_t points = 128) {
  std::vector<Complex> c(count, 0.0);
  for (std::size_t k = 0; k < points; ++k) {
    const double ang = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(points);
    const Complex v = f(std::polar(rho, ang));
    for (std::size_t n = 0; n < count; ++n) c[n] += v * std::polar(1.0, -ang * static_cast<double>(n));
  }
  for (std::size_t n = 0; n < count; ++n) c[n] /= static_cast<double>(points) * std::pow(rho, static_cast<double>(n));
  return c;
}

}  // namespace

TEST(Constructors, BasicCoefficients) {
  const QBase q(0.5);
  const SeriesSpec eq = make_Eq(q);
  EXPECT_NEAR(eq.sup_bound, 1.0 / 0.2887880950866024, 1e-9);
  EXPECT_NEAR(eq.sup_bound, 3.4627, 1e-4);
  EXPECT_NEAR(std::abs(eq.coeff(3) - 1.0 / qpoch_finite(0.5, q, 3)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(make_Aq(q).coeff(1) - Complex(-2.0)), 0.0, 1e-15);
  EXPECT_EQ(make_partial_theta(q, 1.0).sup_bound, 1.0);
  EXPECT_THROW(make_Eq_alpha(q, 0.0), Error);
  for (const SeriesSpec& s : {make_Eq(q), make_Aq(q), make_Eq_alpha(q, 0.7), make_partial_theta(q, 2.0)})
    EXPECT_NO_THROW(validate(s, 200)) << s.label;
}

TEST(Constructors, EqTermRatios) {
  // t_{n+1}/t_n = q^n z / (1 - q^{n+1}) for sum q^{n(n-1)/2} z^n / (q;q)_n
  for (double qv : {0.3, 0.5, 0.8}) {
    const SeriesSpec s = make_Eq(QBase(qv));
    const Complex z(0.7, 0.4);
    for (std::size_t n = 0; n < 200; ++n) {
      const Complex ratio = term_ratio(s, n, z);
      const Complex expect = std::pow(qv, static_cast<double>(n)) * z / (1.0 - std::pow(qv, n + 1.0));
      ASSERT_LE(std::abs(ratio - expect), 1e-12 * std::abs(expect)) << qv << " " << n;
    }
  }
}

TEST(Rphis, ZeroZeroIsEulerProduct) {
  const QBase q(0.5);
  const SeriesSpec s = make_rphis({}, {}, q);
  EXPECT_EQ(eval(s, 0.0).value, Complex(1.0));
  // sum (-1)^n q^{n(n-1)/2} z^n / (q;q)_n = (z;q)_inf
  for (const Complex z : {Complex(0.3), Complex(-2.0, 1.0), Complex(7.0, -3.0)}) {
    const Complex expect = qpoch_infinite(z, q);
    EXPECT_LE(std::abs(eval(s, z).value - expect), 1e-12 * std::max(1.0, std::abs(expect)));
  }
  // term ratio (-1) q^n z / (1 - q^{n+1})
  const Complex z(0.4, -0.9);
  for (std::size_t n = 0; n < 200; ++n) {
    const Complex ratio = term_ratio(s, n, z);
    const Complex expect = -std::pow(0.5, static_cast<double>(n)) * z / (1.0 - std::pow(0.5, n + 1.0));
    ASSERT_LE(std::abs(ratio - expect), 1e-12 * std::abs(expect)) << n;
  }
}

TEST(Rphis, DenominatorsAndTermination) {
  const QBase q(0.5);
  const Complex b = -std::sqrt(0.5);
  for (std::size_t n = 0; n <= 100; ++n) {
    const Complex d = qpoch_finite(0.5, q, n) * qpoch_finite(b, q, n);
    ASSERT_GT(d.real(), 0.0);
    ASSERT_EQ(d.imag(), 0.0);
  }
  EXPECT_NO_THROW(validate(make_rphis({}, {b}, q)));
  // a = q^{-2} terminates after three terms
  const SeriesSpec term = make_rphis({Complex(4.0)}, {Complex(0.25)}, q);
  ASSERT_TRUE(term.length.has_value());
  EXPECT_EQ(*term.length, 3u);
  EXPECT_EQ(term.coeff(3), Complex(0.0));
  EXPECT_THROW(make_rphis({Complex(0.1), Complex(0.2)}, {Complex(0.3)}, q), Error);
  EXPECT_THROW(make_rphis({}, {Complex(2.0)}, q), Error);  // (2;0.5)_n has the factor 1 - 2*0.5 = 0
}

TEST(QBessel, SeriesTermsAndVariableChange) {
  const QBase q(0.5);
  for (double nu : {0.0, 1.5, -0.5}) {
    const QBessel j2 = make_qbessel(2, nu, q);
    EXPECT_NO_THROW(validate(j2.series)) << nu;
    // term of w^1: q^{1+nu} / ((q;q)_1 (q^{nu+1};q)_1)
    const double expect = std::pow(0.5, 1.0 + nu) / ((1.0 - 0.5) * (1.0 - std::pow(0.5, nu + 1.0)));
    EXPECT_NEAR(std::abs(first_term(j2.series, 1.0) - expect), 0.0, 1e-14) << nu;
    const QBessel j3 = make_qbessel(3, nu, q);
    const double expect3 = 0.5 / ((1.0 - 0.5) * (1.0 - std::pow(0.5, nu + 1.0)));
    EXPECT_NEAR(std::abs(first_term(j3.series, 1.0) - expect3), 0.0, 1e-14) << nu;
  }
  const QBessel j0 = make_qbessel(2, 0.0, q);
  EXPECT_NEAR(std::abs(qbessel_entire_value(j0, 0.0) - j0.prefactor), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(j0.prefactor - qpoch_infinite(0.5, q) / qpoch_infinite(0.5, q)), 0.0, 1e-15);
  // direct sum of the kind-2 series at w = -3
  Complex direct(0.0);
  for (int n = 0; n < 60; ++n)
    direct += std::pow(0.5, n * n) * std::pow(Complex(-3.0), n) / std::pow(qpoch_finite(0.5, q, n), 2);
  EXPECT_LE(std::abs(eval(j0.series, -3.0).value - direct), 1e-13 * std::abs(direct));

  const Complex w(-2.5, 0.7);
  const auto [z1, z2] = qbessel_z_from_w(w);
  EXPECT_LE(std::abs(qbessel_w_from_z(z1) - w), 1e-14);
  EXPECT_LE(std::abs(qbessel_w_from_z(z2) - w), 1e-14);
  EXPECT_LE(std::abs(z1 + z2), 1e-15);
  EXPECT_THROW(make_qbessel(1, 0.0, q), Error);
}

TEST(Oscillatory, PartialThetaAndUnitPhases) {
  const QBase q(0.5);
  auto b = [](std::size_t n) { return static_cast<double>(n + 1); };
  const SeriesSpec pt = make_oscillatory({0.0, 0.0, 1.0}, b, 0.0, q, 1.0);
  for (std::size_t n = 0; n < 30; ++n) EXPECT_NEAR(std::abs(pt.coeff(n) - 1.0), 0.0, 1e-15);
  const SeriesSpec osc = make_oscillatory({0.0, 0.0, 1.0}, b, 2.3, q, 1.0);
  for (std::size_t n = 0; n < 30; ++n) EXPECT_NEAR(std::abs(osc.coeff(n)), 1.0, 1e-14);
}

TEST(Oscillatory, CubicExponentBound) {
  // e(n) = n^3 - 5 n^2 has integer minimum -18 at n = 3, so sup |f_n| = 2^18
  const QBase q(0.5);
  const SeriesSpec s = make_oscillatory({0.0, 0.0, 0.0, 1.0}, [](std::size_t n) { return n + 1.0; }, 0.7, q, 5.0);
  double sup = 0.0;
  for (std::size_t n = 0; n <= 10000; ++n) {
    const double m = std::abs(s.coeff(n));
    if (std::isfinite(m)) sup = std::max(sup, m);
  }
  EXPECT_NEAR(sup, std::pow(2.0, 18), 1e-6);
  EXPECT_GE(s.sup_bound, sup);
  EXPECT_LE(s.sup_bound, std::pow(0.5, -500.0 / 27.0));
  EXPECT_NO_THROW(validate(s, 500));
}

TEST(Oscillatory, DomainErrors) {
  const QBase q(0.5);
  auto b = [](std::size_t n) { return n + 1.0; };
  EXPECT_THROW(make_oscillatory({0.0, 1.0}, b, 0.0, q, 1.0), Error);           // degree 1
  EXPECT_THROW(make_oscillatory({0.0, 0.0, 1.0}, b, 0.0, q, 2.0), Error);      // alpha > a_2
  EXPECT_THROW(make_oscillatory({0.0, -1.0, 1.0}, b, 0.0, q, 1.0), Error);     // a_1 < 0 at alpha = a_2
  EXPECT_THROW(make_oscillatory({0.0, 0.0, -1.0, 1.0}, b, 0.0, QBase(Complex(0.3, 0.3)), 1.0), Error);
}

TEST(QHermite, RecurrenceValues) {
  const QBase q(0.5);
  EXPECT_EQ(q_hermite(0, 0.3, q), Complex(1.0));
  EXPECT_NEAR(std::abs(q_hermite(1, Complex(0.3, 0.2), q) - Complex(0.6, 0.4)), 0.0, 1e-15);
  EXPECT_NEAR(q_hermite(2, 1.0, q).real(), 3.5, 1e-15);
}

TEST(QHermite, GeneratingFunction) {
  // sum H_n(x|q) t^n / (q;q)_n = 1 / ((t e^{i theta}, t e^{-i theta}; q)_inf), x = cos theta
  const QBase q(0.5);
  for (const Complex x : {Complex(0.0), Complex(0.3), Complex(-0.8), Complex(1.7), Complex(0.4, 0.5)}) {
    const Complex e = x + std::sqrt(x * x - 1.0);  // e^{i theta}
    auto gen = [&](Complex t) { return 1.0 / (qpoch_infinite(t * e, q) * qpoch_infinite(t / e, q)); };
    const double rho = 0.5 * std::min(std::abs(e), 1.0 / std::abs(e));  // half way to the nearest pole
    const auto coeffs = taylor_coefficients(gen, 9, rho, 256);
    const auto h = q_hermite_all(8, x, q);
    for (std::size_t n = 0; n <= 8; ++n) {
      const Complex expect = h[n] / qpoch_finite(0.5, q, n);
      EXPECT_LE(std::abs(coeffs[n] - expect), 1e-10 * std::max(1.0, std::abs(expect))) << "x=" << x << " n=" << n;
    }
  }
}

TEST(QLaguerre, LowOrder) {
  const QBase q(0.5);
  EXPECT_EQ(q_laguerre(0, 0.5, 2.0, q), Complex(1.0));
  EXPECT_NEAR(q_laguerre(1, 0.5, 0.0, q).real(), (1.0 - std::pow(0.5, 1.5)) / 0.5, 1e-15);
  EXPECT_NEAR(q_laguerre(1, 0.5, 0.0, q).real(), 1.29289, 1e-5);
  // L_n(0) = (q^{a+1};q)_n / (q;q)_n
  for (std::size_t n = 0; n < 10; ++n) {
    const Complex expect = qpoch_finite(std::pow(0.5, 1.7), q, n) / qpoch_finite(0.5, q, n);
    EXPECT_NEAR(std::abs(q_laguerre(n, 0.7, 0.0, q) - expect), 0.0, 1e-14);
  }
}

TEST(Eqzt, SpecialValues) {
  const QBase q(0.5);
  EXPECT_NEAR(std::abs(eval_Eqzt(0.3, 0.0, q).value - 1.0), 0.0, 1e-15);
  // H_{2k+1}(0) = 0, so only real even terms survive at z = 0
  const Complex v = eval_Eqzt(0.0, 0.5, q).value;
  EXPECT_NEAR(v.imag(), 0.0, 1e-15);
  EXPECT_GT(v.real(), 0.0);
  // reference value at z = cos 1, t = 0.3
  EXPECT_NEAR(eval_Eqzt(std::cos(1.0), 0.3, q).value.real(), 1.7248557838906434, 1e-13);
  EXPECT_THROW(eval_Eqzt(0.1, 1.2, q), Error);
  EXPECT_THROW(eval_Eqzt(0.1, 0.2, QBase(Complex(0.3, 0.1))), Error);
}

TEST(Eqzt, HermiteSumMatchesDefinition) {
  const QBase q(0.5);
  const Complex z(0.6, -0.3), t(0.2, 0.4);
  const auto h = q_hermite_all(80, z, q);
  Complex sum(0.0);
  for (std::size_t n = 0; n <= 80; ++n)
    sum += std::pow(0.5, n * n / 4.0) * std::pow(t, static_cast<double>(n)) * h[n] / qpoch_finite(0.5, q, n);
  sum /= qpoch_infinite(0.5 * t * t, QBase(0.25));
  EXPECT_LE(std::abs(eval_Eqzt(z, t, q).value - sum), 1e-13 * std::abs(sum));
}

TEST(Eqzt, LargeArgumentLogMode) {
  const QBase q(0.5);
  const LogEvalResult r = eval_Eqzt_log(1e12, 0.5, q);
  EXPECT_TRUE(std::isfinite(r.value.log_mag));
  EXPECT_GT(r.value.log_mag, 500.0);
}

TEST(Lalpha, ValueAtZeroAndCoefficients) {
  const QBase q(0.5);
  for (double alpha : {0.1, 0.5, 1.0}) {
    const SeriesSpec s = make_Lalpha(alpha, q);
    const Complex a0 = eval(make_Aq(QBase(0.25)), -std::pow(0.5, 2.0 * alpha)).value;
    EXPECT_NEAR(std::abs(eval(s, 0.0).value - a0), 0.0, 1e-15) << alpha;
    for (std::size_t n = 0; n <= 50; ++n) ASSERT_LE(std::abs(s.coeff(n)), s.sup_bound) << alpha << " " << n;
  }
  EXPECT_THROW(make_Lalpha(0.0, q), Error);
}

TEST(LaguerreIdentity, BothSidesAgree) {
  const QBase q(0.5);
  const LaguerreIdentityReport r0 = verify_laguerre_identity(0.0, 1.0, q);
  const Complex a = eval(make_Aq(QBase(0.25)), -0.25).value;
  EXPECT_NEAR(std::abs(r0.rhs - a), 0.0, 1e-14);
  EXPECT_NEAR(r0.lhs.real(), 1.0836806416734973, 1e-13);
  EXPECT_NEAR(verify_laguerre_identity(0.0, 0.5, q).lhs.real(), 1.1680562445096432, 1e-13);
  for (double alpha : {0.5, 1.0})
    for (const Complex z : {Complex(0), Complex(0.5), Complex(-0.5), Complex(2), Complex(1, 1)})
      EXPECT_LE(verify_laguerre_identity(z, alpha, q).rel_diff, 1e-8) << alpha << " " << z;
}
