#include "astpa/em.hpp"
#include "astpa/iis.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace astpa;

TEST(Em, SingleGaussianDiagonal) {
  Vector mu(3), sd(3);
  mu << 1.0, -2.0, 0.5;
  sd << 0.5, 2.0, 1.0;
  const Matrix x = IndependentGaussian(mu, sd).sample_direct(10000, 1);
  EmConfig cfg;
  cfg.kind = CovarianceKind::kDiagonal;
  const EmFit fit = fit_gmm(x, cfg, 2);
  ASSERT_EQ(fit.mixture.components(), 1u);
  for (int j = 0; j < 3; ++j) {
    EXPECT_LE(std::abs(fit.mixture.mean(0)[j] - mu[j]), 3.0 * sd[j] / 100.0);
    EXPECT_NEAR(fit.mixture.covariance(0)(j, j) / (sd[j] * sd[j]), 1.0, 0.1);
  }
}

TEST(Em, SeparatedModes) {
  Rng rng(3);
  std::normal_distribution<double> n01;
  Matrix x(4000, 1);
  for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, 0) = (i % 2 ? 5.0 : -5.0) + n01(rng);
  EmConfig cfg;
  cfg.components = 2;
  const EmFit fit = fit_gmm(x, cfg, 4);
  ASSERT_EQ(fit.mixture.components(), 2u);
  const double a = fit.mixture.mean(0)[0], b = fit.mixture.mean(1)[0];
  EXPECT_NEAR(std::min(a, b), -5.0, 0.2);
  EXPECT_NEAR(std::max(a, b), 5.0, 0.2);
}

TEST(Em, LogLikelihoodNonDecreasing) {
  const Matrix x = NealFunnel(2).sample_direct(3000, 5);
  EmConfig cfg;
  cfg.components = 4;
  const EmFit fit = fit_gmm(x, cfg, 6);
  for (std::size_t k = 1; k < fit.log_likelihood.size(); ++k) {
    EXPECT_GE(fit.log_likelihood[k], fit.log_likelihood[k - 1] - 1e-10);
  }
}

TEST(Iis, ConstantRatioIsExact) {
  const GaussianMixture q({1.0}, {Vector::Zero(2)}, {Matrix::Identity(2, 2)});
  const DensityTarget h(std::make_shared<ScaledDensity>(std::make_shared<MixtureDensity>(q), std::log(7.0)));
  for (std::size_t m : {2u, 17u, 500u}) {
    const NormalizingEstimate e = estimate_ch(h, q, m, 1);
    EXPECT_NEAR(e.value(), 7.0, 1e-13);
    EXPECT_LE(e.relative_variance, 1e-25);
  }
}

TEST(Iis, SplitHalfRule) {
  std::vector<double> lr(10, 0.0);
  for (std::size_t i = 5; i < 10; ++i) lr[i] = std::log(2.0);
  NormalizingEstimate e = combine_log_ratios(lr);
  EXPECT_EQ(e.rule, SplitRule::kAverage);
  EXPECT_NEAR(e.value(), 1.5, 1e-14);
  for (std::size_t i = 5; i < 10; ++i) lr[i] = std::log(10.0);
  e = combine_log_ratios(lr);
  EXPECT_EQ(e.rule, SplitRule::kMinimum);
  EXPECT_NEAR(e.value(), 1.0, 1e-14);
}

TEST(Iis, WorksInLogSpace) {
  std::vector<double> lr{-800.0, -801.0, -800.5, -799.0};
  const NormalizingEstimate e = combine_log_ratios(lr);
  EXPECT_TRUE(std::isfinite(e.log_value));
  EXPECT_NEAR(e.log_value, -800.0, 2.0);
}

TEST(Iis, UnbiasedOnScaledGaussian) {
  Vector mu(2), sd(2);
  mu << 0.5, -1.0;
  sd << 1.0, 0.5;
  const DensityTarget h(std::make_shared<ScaledDensity>(std::make_shared<IndependentGaussian>(mu, sd), std::log(3.0)));
  Matrix cov = Matrix::Zero(2, 2);
  cov.diagonal() = (1.3 * sd).array().square();
  const GaussianMixture q({1.0}, {mu}, {cov});
  double sum = 0.0, sum2 = 0.0;
  const int n = 200;
  for (int k = 0; k < n; ++k) {
    const double v = estimate_ch(h, q, 500, 100 + k).value();
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / (n - 1));
  EXPECT_LE(std::abs(mean - 3.0), 2.0 * se);
}

TEST(Iis, CPiOfScaledGaussian) {
  const auto model = std::make_shared<ScaledDensity>(IndependentGaussian::standard(2), 5.0);
  CPiConfig cfg;
  cfg.n_pi = 10000;
  cfg.m_pi = 10000;
  const NormalizingEstimate e = estimate_c_pi(model, Vector::Zero(2), cfg, 3);
  EXPECT_NEAR(e.value() / std::exp(5.0), 1.0, 0.01);
}
