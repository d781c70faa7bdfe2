#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>
#include <vector>

#include "qzeros/regions.hpp"

using namespace qzeros;

namespace {

// restores QZEROS_THREADS on scope exit
struct ThreadsEnv {
  std::string saved;
  bool had = false;
  ThreadsEnv() {
    if (const char* v = std::getenv("QZEROS_THREADS")) {
      saved = v;
      had = true;
    }
  }
  ~ThreadsEnv() {
    if (had)
      setenv("QZEROS_THREADS", saved.c_str(), 1);
    else
      unsetenv("QZEROS_THREADS");
  }
};

}  // namespace

TEST(TwoPhiOne, TrivialAndReference) {
  const TwoPhiOneResult z = eval_Eqzt_2phi1(0.7, 0.0, 0.5);
  EXPECT_NEAR(std::abs(z.value - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(eval_Eqzt_2phi1(1.0, 0.3, 0.5).value.real(), 1.7248557838906434, 1e-13);
  EXPECT_THROW(eval_Eqzt_2phi1(1.0, 1.0, 0.5), Error);
  EXPECT_THROW(eval_Eqzt_2phi1(1.0, 0.3, 1.5), Error);
}

TEST(TwoPhiOne, AgreesWithHermiteRoute) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double q = 0.1 + 0.8 * u(rng);
    const Complex theta(kPi * u(rng), 0.6 * (u(rng) - 0.5));
    const Complex t = std::polar(0.9 * u(rng), 2.0 * kPi * u(rng));
    const TwoPhiOneResult two = eval_Eqzt_2phi1(theta, t, q);
    const EvalResult herm = eval_Eqzt(std::cos(theta), t, QBase(q));
    // points beyond the zero-free bound can be small through cancellation, so
    // the routes are compared within their own error estimates
    const double allowed = 1e-12 * std::abs(herm.value) + 2.0 * (herm.abs_error + two.abs_error);
    EXPECT_LE(std::abs(two.value - herm.value), allowed) << "q=" << q << " theta=" << theta << " t=" << t;
    EXPECT_LE(two.abs_error, 1e-14 * std::abs(two.prefactor) * std::max(1.0, std::abs(two.series_sum)));
  }
}

TEST(TwoPhiOne, EvenInTheta) {
  for (const Complex theta : {Complex(0.4), Complex(2.0, 0.3)}) {
    const Complex a = eval_Eqzt_2phi1(theta, Complex(0.2, 0.1), 0.6).value;
    const Complex b = eval_Eqzt_2phi1(-theta, Complex(0.2, 0.1), 0.6).value;
    EXPECT_LE(std::abs(a - b), 1e-14 * std::abs(a));
  }
}

TEST(Bounds, ValuesAtHalf) {
  EXPECT_NEAR(zero_free_t_bound(1.0, 0.5), 0.5 / (2.0 * std::pow(1.0 + std::pow(0.5, 0.25), 2)), 1e-15);
  EXPECT_NEAR(zero_free_t_bound(1.0, 0.5), 0.0738, 1e-4);
  EXPECT_NEAR(positivity_re_bound(1.0, 0.5), 0.30619, 1e-5);
  EXPECT_NEAR(positivity_im_bound(1.0, 0.5), 0.33072, 1e-5);
  EXPECT_THROW(zero_free_t_bound(1.0, 1.0), Error);
  EXPECT_THROW(positivity_re_bound(1.0, 0.0), Error);
}

TEST(Bounds, SymmetryAndMonotonicity) {
  for (auto f : {&zero_free_t_bound, &positivity_re_bound, &positivity_im_bound}) {
    EXPECT_NEAR(f(Complex(0.3, 0.4), 0.5), f(Complex(2.1, -0.4), 0.5), 1e-15);
    EXPECT_NEAR(f(Complex(0.3), 0.5), f(Complex(2.9), 0.5), 1e-15);  // depends on Im theta only
    double prev = f(Complex(1.0, 0.0), 0.5);
    for (double y = 0.1; y < 2.0; y += 0.1) {
      const double b = f(Complex(1.0, y), 0.5);
      EXPECT_LT(b, prev);
      prev = b;
    }
  }
  // q -> 0 limit of the zero-free bound
  EXPECT_NEAR(zero_free_t_bound(0.0, 1e-16), 0.5, 2e-4);
  EXPECT_NEAR(positivity_im_bound(1.0, 0.5) / positivity_re_bound(1.0, 0.5), std::sqrt(0.875 / 0.75), 1e-15);
}

TEST(Grids, Shapes) {
  const auto real = real_theta_grid(4);
  ASSERT_EQ(real.size(), 4u);
  EXPECT_NEAR(real[0].real(), kPi / 8.0, 1e-15);
  for (const Complex th : real) EXPECT_GT(std::abs(std::cos(th.real())), 1e-3);
  const auto strip = complex_strip_grid(3, 0.4);
  EXPECT_EQ(strip.size(), 12u);
  const RegionGrid g = make_region_grid(0.5, real, 5, 0.9, RegionKind::zero_free);
  ASSERT_EQ(g.points.size(), 20u);
  for (const RegionPoint& p : g.points) {
    EXPECT_NE(p.t, 0.0);
    EXPECT_LE(std::abs(p.t), 0.9 * zero_free_t_bound(p.theta, 0.5) * (1.0 + 1e-15));
  }
  EXPECT_EQ(std::string(to_string(RegionKind::im_positivity)), "im-positivity");
}

TEST(Regions, ZeroFreeOnRealAndStrip) {
  for (double q : {0.3, 0.5, 0.8}) {
    const RegionReport r = check_zero_free(make_region_grid(q, real_theta_grid(32), 8, 0.99, RegionKind::zero_free));
    EXPECT_TRUE(r.pass) << q;
    EXPECT_GT(r.min_certified, 0.0);
    EXPECT_LE(r.max_route_discrepancy, 1e-10);
    const RegionReport s = check_zero_free(make_region_grid(q, complex_strip_grid(4, 0.3), 4, 0.99, RegionKind::zero_free));
    EXPECT_TRUE(s.pass) << q;
  }
}

TEST(Regions, PositivityRealPart) {
  for (double q : {0.3, 0.5, 0.8}) {
    const RegionReport r = check_positivity_re(make_region_grid(q, real_theta_grid(32), 8, 0.99, RegionKind::re_positivity));
    EXPECT_TRUE(r.pass) << q;
    const RegionReport s =
        check_positivity_re(make_region_grid(q, complex_strip_grid(4, 0.3), 4, 0.99, RegionKind::re_positivity));
    EXPECT_TRUE(s.pass) << q;
  }
}

TEST(Regions, PositivityImaginaryPart) {
  for (double q : {0.3, 0.5, 0.8}) {
    const RegionReport r = check_positivity_im(make_region_grid(q, real_theta_grid(32), 8, 0.99, RegionKind::im_positivity));
    EXPECT_TRUE(r.pass) << q;
    EXPECT_GT(r.min_observed, 0.0);
  }
}

TEST(Regions, ImRatioEvenInT) {
  const double q = 0.5, x = std::cos(0.8);
  const double q4 = std::pow(q, 0.25);
  auto ratio = [&](double t) {
    return (1.0 - q) * eval_Eqzt(x, Complex(0.0, t), QBase(q)).value.imag() / (2.0 * t * q4 * x);
  };
  for (double t : {0.05, 0.2, 0.3}) EXPECT_NEAR(ratio(t), ratio(-t), 1e-14);
  // small t limit is 1
  EXPECT_NEAR(ratio(1e-6), 1.0, 1e-5);
}

TEST(Regions, Preconditions) {
  RegionGrid g = make_region_grid(0.5, real_theta_grid(4), 2, 0.99, RegionKind::zero_free);
  g.points[0].t = 0.5;  // far beyond the bound
  try {
    check_zero_free(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precondition);
  }
  RegionGrid im = make_region_grid(0.5, complex_strip_grid(2, 0.2), 2, 0.9, RegionKind::im_positivity);
  EXPECT_THROW(check_positivity_im(im), Error);  // complex theta
  RegionGrid zero_t{0.5, {RegionPoint{Complex(0.4), 0.0}}};
  EXPECT_THROW(check_positivity_im(zero_t), Error);
  RegionGrid right_angle{0.5, {RegionPoint{Complex(kPi / 2.0), 0.1}}};
  EXPECT_THROW(check_positivity_im(right_angle), Error);
  // t = 0 is fine for the other checks
  RegionGrid trivial{0.5, {RegionPoint{Complex(0.4), 0.0}}};
  const RegionReport r = check_zero_free(trivial);
  EXPECT_NEAR(r.min_observed, 1.0, 1e-15);
  EXPECT_TRUE(r.pass);
}

TEST(GrowthConstant, ApproachesTarget) {
  const GrowthConstantReport r = growth_constant_check(0.5, 0.5, {1e4, 1e6, 1e8});
  EXPECT_NEAR(r.target, 1.0 / std::log(2.0), 1e-15);
  ASSERT_EQ(r.ratios.size(), 3u);
  EXPECT_TRUE(r.approaching);
  EXPECT_LE(r.final_relative_error, 0.25);
  // the sampled ratios come down to the target from above
  for (double v : r.ratios) EXPECT_GT(v, r.target);
  EXPECT_THROW(growth_constant_check(0.5, 0.5, {0.5, 10.0}), Error);
}

TEST(Parallel, ThreadCountDoesNotChangeResults) {
  ThreadsEnv guard;
  const RegionGrid g = make_region_grid(0.5, real_theta_grid(16), 6, 0.99, RegionKind::zero_free);
  setenv("QZEROS_THREADS", "1", 1);
  EXPECT_EQ(thread_count(), 1u);
  const RegionReport one = check_zero_free(g);
  const GrowthConstantReport gc1 = growth_constant_check(0.5, 0.5, {1e3, 1e4});
  setenv("QZEROS_THREADS", "4", 1);
  EXPECT_EQ(thread_count(), 4u);
  const RegionReport four = check_zero_free(g);
  const GrowthConstantReport gc4 = growth_constant_check(0.5, 0.5, {1e3, 1e4});
  EXPECT_EQ(one.min_observed, four.min_observed);
  EXPECT_EQ(one.min_certified, four.min_certified);
  EXPECT_EQ(one.max_route_discrepancy, four.max_route_discrepancy);
  EXPECT_EQ(gc1.log_M, gc4.log_M);
}
