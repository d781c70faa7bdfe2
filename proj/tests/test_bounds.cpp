#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qzeros/bounds.hpp"
#include "qzeros/catalog.hpp"

using namespace qzeros;

TEST(Lemma, ValuesAtHalf) {
  // theta(1/4) = 2.12893...
  const double inner = theta_sum(0.25) / 0.5;
  EXPECT_NEAR(lemma_bound(1.0, 0.5, 1.0, 1.0), inner, 1e-14);
  EXPECT_NEAR(lemma_bound(1.0, 0.5, 1.0, 4.0), 4.2579, 1e-4);
  EXPECT_NEAR(lemma_bound(1.0, 0.5, 1.0, 0.0), inner, 1e-14);
  // just above 4 the second branch takes over: 2 theta 4 exp(log^2 4 / (4 log 2)) = 16 theta
  EXPECT_NEAR(lemma_bound(1.0, 0.5, 1.0, 4.0 * (1.0 + 1e-12)), 16.0 * theta_sum(0.25), 1e-9);
  EXPECT_NEAR(lemma_bound(1.0, 0.5, 1.0, 4.0 * (1.0 + 1e-12)), 34.06, 1e-2);
  EXPECT_NEAR(lemma_bound(1.0, 0.5, 3.0, 2.0), 3.0 * inner, 1e-13);
  EXPECT_THROW(lemma_bound(0.0, 0.5, 1.0, 1.0), Error);
  EXPECT_THROW(lemma_bound(1.0, 1.0, 1.0, 1.0), Error);
  EXPECT_THROW(lemma_bound(1.0, 0.5, 1.0, -1.0), Error);
}

TEST(Lemma, LogFormDoesNotOverflow) {
  const double lb = log_lemma_bound(1.0, 0.5, 1.0, 1e300);
  EXPECT_TRUE(std::isfinite(lb));
  const double lr = std::log(1e300);
  EXPECT_NEAR(lb, std::log(2.0 * theta_sum(0.25)) + lr + lr * lr / (4.0 * std::log(2.0)), 1e-9 * lb);
}

TEST(Lemma, EnvelopeHoldsForCatalog) {
  const QBase q(0.5);
  const std::vector<SeriesSpec> specs{make_Eq(q), make_Aq(q), make_partial_theta(q, 1.0),
                                      make_rphis({Complex(0.25)}, {Complex(0.5)}, q), make_qbessel(3, 0.5, q).series};
  for (const SeriesSpec& s : specs)
    for (double r : {0.1, 1.0, 3.9, 4.1, 50.0, 1e4, 1e8})
      EXPECT_LE(log_max_modulus(s, r), log_lemma_bound(s, r)) << s.label << " r=" << r;
}

TEST(MaxModulus, EulerOnPositiveAxis) {
  // all coefficients positive: the maximum sits at z = r, M(4) = (-4; 1/2)_inf
  const SeriesSpec s = make_Eq(QBase(0.5));
  const double expect = qpoch_infinite(-4.0, QBase(0.5)).real();
  EXPECT_NEAR(estimate_max_modulus(s, 4.0), expect, 1e-12 * expect);
  EXPECT_NEAR(expect, 71.6, 0.1);
  EXPECT_NEAR(estimate_max_modulus(s, 0.0), 1.0, 1e-15);
  EXPECT_THROW(log_max_modulus(s, -1.0), Error);
}

TEST(MaxModulus, PartialThetaAndSampleDoubling) {
  const SeriesSpec s = make_partial_theta(QBase(0.5), 1.0);
  for (double r : {2.0, 30.0, 1e5}) {
    const double at_axis = eval_log(s, r).value.log_mag;
    const double lm = log_max_modulus(s, r);
    EXPECT_NEAR(lm, at_axis, 1e-12 * std::max(1.0, at_axis));
    EXPECT_NEAR(log_max_modulus(s, r, 4096), lm, 1e-12 * std::max(1.0, lm));
  }
  EXPECT_THROW(estimate_max_modulus(s, 1e60), Error);
}

TEST(Floors, SuperlinearCase) {
  const GrowthParams gp;  // A = 2, C = 1, eta = 2/3: log R_n = 4n/27
  for (std::size_t n : {1u, 5u, 20u}) {
    EXPECT_NEAR(log_radius_floor(n, gp), 4.0 * static_cast<double>(n) / 27.0, 1e-14);
    EXPECT_NEAR(radius_floor(n, gp), corollary_floor(n, 2.0 / 3.0, 1.0), 1e-12 * radius_floor(n, gp));
  }
  GrowthParams g3{3.0, 0.5, 0.5};
  // ((1-eta) eta^A / C)^{1/(A-1)} n^{1/(A-1)} = (0.125)^{1/2} sqrt(n)
  EXPECT_NEAR(log_radius_floor(8, g3), std::sqrt(0.125) * std::sqrt(8.0), 1e-14);
}

TEST(Floors, SublinearDefiningRelation) {
  for (double A : {0.5, 1.0}) {
    const GrowthParams gp{A, 0.7, 2.0 / 3.0};
    for (std::size_t n : {1u, 10u, 100u}) {
      const double lr = log_radius_floor(n, gp);
      EXPECT_NEAR(gp.C * std::pow(2.0, A + 1.0) * std::pow(lr, A), static_cast<double>(n), 1e-10 * n);
      // the printed closed form is a different quantity; only reported
      EXPECT_GT(paper_closed_form_floor(n, gp), 0.0);
    }
  }
  const GrowthParams gp{1.0, 1.0, 2.0 / 3.0};
  EXPECT_NEAR(paper_closed_form_floor(3, gp), std::exp(2.0 * 2.0 * 3.0), 1e-6);
}

TEST(Floors, IncreasingAndLimits) {
  for (const GrowthParams gp : {GrowthParams{2.0, 1.0, 2.0 / 3.0}, GrowthParams{1.5, 0.3, 0.4}, GrowthParams{0.8, 2.0, 0.5}}) {
    double prev = 0.0;
    for (std::size_t n = 1; n < 200; ++n) {
      const double r = log_radius_floor(n, gp);
      EXPECT_GT(r, prev);
      prev = r;
    }
  }
  // larger C means a weaker hypothesis and smaller floors
  EXPECT_LT(radius_floor(10, GrowthParams{2.0, 2.0, 2.0 / 3.0}), radius_floor(10, GrowthParams{2.0, 1.0, 2.0 / 3.0}));
  EXPECT_THROW(radius_floor(0, GrowthParams{}), Error);
  EXPECT_THROW(corollary_floor(1, 1.0, 1.0), Error);
  EXPECT_THROW(corollary_floor(1, 0.5, 0.0), Error);
}

TEST(Floors, ParameterValidation) {
  EXPECT_THROW(validate(GrowthParams{0.0, 1.0, 0.5}), Error);
  EXPECT_THROW(validate(GrowthParams{2.0, -1.0, 0.5}), Error);
  EXPECT_THROW(validate(GrowthParams{2.0, 1.0, 1.0}), Error);
  EXPECT_NO_THROW(validate(GrowthParams{1.0, 1.0, 7.0}));  // eta unused for A <= 1
}

TEST(GrowthFit, PartialThetaConstant) {
  // log M(r) = log^2 r / (4 log 2) + O(log r) for q = 1/2, alpha = 1
  const SeriesSpec s = make_partial_theta(QBase(0.5), 1.0);
  const double limit = 1.0 / (4.0 * std::log(2.0));
  const std::vector<double> grid = default_growth_grid();
  const GrowthFit fit = growth_exponent_fit(s, 2.0, grid);
  EXPECT_GT(fit.sampled_limsup, limit);
  // the O(log r) correction is below (log r + log(2 theta)) / log^2 r at the top half
  const double lr = std::log(std::sqrt(grid.front() * grid.back()));
  EXPECT_LT(fit.sampled_limsup, limit + (lr + std::log(2.0 * theta_sum(0.25))) / (lr * lr));
  EXPECT_NEAR(fit.C_est, 1.05 * fit.sampled_limsup, 1e-15);
  ASSERT_EQ(fit.profile.radii.size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_LE(fit.profile.log_M[i], fit.profile.log_envelope[i]);

  const GrowthFit fine = growth_exponent_fit(s, 2.0, log_spaced_grid(10.0, 1e6, 80));
  EXPECT_NEAR(fine.C_est, fit.C_est, 0.01 * fit.C_est);
  EXPECT_LE(hypothesis_radius(fit), grid.back());
}

TEST(GrowthFit, Preconditions) {
  const SeriesSpec s = make_Eq(QBase(0.5));
  EXPECT_THROW(growth_exponent_fit(s, 2.0, {10.0}), Error);
  EXPECT_THROW(growth_exponent_fit(s, 2.0, {0.5, 10.0}), Error);
  EXPECT_THROW(growth_exponent_fit(s, 0.0, {10.0, 100.0}), Error);
  const auto g = log_spaced_grid(1.0, 100.0, 10);
  ASSERT_EQ(g.size(), 21u);
  EXPECT_NEAR(g.front(), 1.0, 1e-15);
  EXPECT_NEAR(g.back(), 100.0, 1e-12);
}

TEST(HypothesisRadius, ScansFromTheTop) {
  GrowthFit fit;
  fit.C_est = 1.0;
  fit.profile.radii = {2.0, 4.0, 8.0, 16.0, 32.0};
  fit.profile.ratio = {0.5, 1.2, 0.9, 0.8, 0.7};
  EXPECT_EQ(hypothesis_radius(fit), 8.0);
  fit.profile.ratio.back() = 1.1;
  EXPECT_TRUE(std::isinf(hypothesis_radius(fit)));
  fit.profile.ratio = {0.1, 0.1, 0.1, 0.1, 0.1};
  EXPECT_EQ(hypothesis_radius(fit), 2.0);
}

TEST(Counting, EulerCounts) {
  const SeriesSpec s = make_Eq(QBase(0.5));
  const ZeroList zl = find_first_zeros(s, 10);
  const GrowthParams gp{2.0, 1.0, 2.0 / 3.0};
  const CountingReport rep = counting_check(zl, gp, {1.5, 2.0, 5.0, 17.0, 65.0, 1e4});
  ASSERT_EQ(rep.rows.size(), 4u);  // 1.5 below the floor of 2, 1e4 beyond the search radius
  const std::size_t expect[] = {2, 3, 5, 7};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(rep.rows[i].count, expect[i]) << rep.rows[i].R;
    EXPECT_TRUE(rep.rows[i].ok);
    const double lr = std::log(rep.rows[i].R);
    EXPECT_NEAR(rep.rows[i].bound_jensen, 4.0 / std::log(2.0) * lr * lr, 1e-12);
    EXPECT_NEAR(rep.rows[i].bound_eta, 4.5 * lr, 1e-12);
  }
  EXPECT_TRUE(rep.pass);
  EXPECT_FALSE(rep.constructed.empty());
  for (const auto& row : rep.constructed) {
    EXPECT_GE(row.R_n, 2.0);
    EXPECT_LT(row.R_n, zl.search_radius);
    EXPECT_NEAR(row.limit, 2.0 / 3.0 * static_cast<double>(row.n), 1e-12);
  }
  // valid_from moves the lower end of the range
  EXPECT_EQ(counting_check(zl, gp, {2.0, 5.0, 17.0, 65.0}, 10.0).rows.size(), 2u);
}

TEST(Counting, EmptyListAndViolation) {
  ZeroList empty;
  empty.search_radius = 100.0;
  const CountingReport ok = counting_check(empty, GrowthParams{}, log_spaced_grid(2.0, 50.0, 5));
  EXPECT_TRUE(ok.pass);
  for (const auto& row : ok.rows) EXPECT_EQ(row.count, 0u);

  // many zeros just outside 2 against a tiny C
  ZeroList crowded;
  crowded.search_radius = 10.0;
  for (int k = 0; k < 20; ++k) crowded.zeros.push_back(Zero{std::polar(2.5, 0.3 * k), 1, 0.0, true});
  EXPECT_FALSE(counting_check(crowded, GrowthParams{2.0, 0.1, 2.0 / 3.0}, {3.0}).pass);
}

TEST(Certify, FloorsAgainstModuli) {
  const GrowthParams gp;  // R_n = exp(4n/27): 1.16, 1.35, 1.56, ...
  const CertifyResult a = certify(std::vector<double>{1.0, 2.0, 4.0}, gp);
  ASSERT_EQ(a.certificates.size(), 3u);
  EXPECT_FALSE(a.certificates[0].satisfied);
  EXPECT_TRUE(a.certificates[1].satisfied);
  ASSERT_TRUE(a.min_N.has_value());
  EXPECT_EQ(*a.min_N, 2u);

  const CertifyResult on_floor = certify(std::vector<double>{radius_floor(1, gp), radius_floor(2, gp)}, gp);
  EXPECT_EQ(*on_floor.min_N, 1u);

  const CertifyResult bad = certify(std::vector<double>{5.0, 6.0, 1.0}, gp);
  EXPECT_FALSE(bad.min_N.has_value());

  const CertifyResult empty = certify(std::vector<double>{}, gp);
  EXPECT_FALSE(empty.min_N.has_value());
}

TEST(Certify, EulerZerosWithEstimatedConstant) {
  const SeriesSpec s = make_Eq(QBase(0.5));
  const GrowthFit fit = growth_exponent_fit(s, 2.0, default_growth_grid());
  const GrowthParams gp{2.0, fit.C_est, 2.0 / 3.0};
  const CertifyResult c = certify(find_first_zeros(s, 8), gp);
  ASSERT_TRUE(c.min_N.has_value());
  EXPECT_LE(*c.min_N, 5u);
}
