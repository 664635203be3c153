#include "astpa/density.hpp"
#include "astpa/gmm.hpp"
#include "astpa/math.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace astpa;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(v.size());
  std::size_t i = 0;
  for (double e : v) out[i++] = e;
  return out;
}

double trapezoid_2d(const DensityModel& m, double lo0, double hi0, double lo1, double hi1, int n) {
  const double h0 = (hi0 - lo0) / n, h1 = (hi1 - lo1) / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double w = (i == 0 || i == n ? 0.5 : 1.0) * (j == 0 || j == n ? 0.5 : 1.0);
      acc += w * std::exp(m.evaluate(vec({lo0 + i * h0, lo1 + j * h1})).value);
    }
  }
  return acc * h0 * h1;
}

}  // namespace

TEST(Density, FunnelAtOrigin) {
  NealFunnel f(2);
  EXPECT_NEAR(f.evaluate(vec({0.0, 0.0})).value, -std::log(2.0 * kPi), 1e-14);
}

TEST(Density, RosenbrockAtMode) {
  Rosenbrock r(2, 0.05, 5.0, 1.0);
  EXPECT_NEAR(r.evaluate(vec({1.0, 1.0})).value, std::log(std::sqrt(0.05) * std::sqrt(5.0) / kPi), 1e-14);
}

TEST(Density, RingPosteriorMatchesStraightSum) {
  std::vector<double> y{1.0, 2.5, -0.3, 4.2, 2.0, 7.7};
  RingPosterior ring(2, y);
  const Vector x = vec({1.0, 1.0});  // s = 2
  double expected = -0.5 * x.squaredNorm() - std::log(2.0 * kPi);
  for (double v : y) expected += -0.5 * (v - 2.0) * (v - 2.0) / 16.0 - std::log(4.0) - 0.5 * kLogTwoPi;
  // The posterior may drop constants; compare differences between two points.
  const Vector x2 = vec({0.3, -1.7});
  double expected2 = -0.5 * x2.squaredNorm() - std::log(2.0 * kPi);
  for (double v : y) expected2 += -0.5 * (v - x2.squaredNorm()) * (v - x2.squaredNorm()) / 16.0 - std::log(4.0) - 0.5 * kLogTwoPi;
  EXPECT_NEAR(ring.evaluate(x).value - ring.evaluate(x2).value, expected - expected2, 1e-12);
}

TEST(Density, NormalizedFamiliesIntegrateToOne) {
  EXPECT_NEAR(trapezoid_2d(IndependentGaussian(vec({0.5, -1.0}), vec({1.0, 0.7})), -8, 8, -8, 6, 400), 1.0, 0.01);
  EXPECT_NEAR(trapezoid_2d(Rosenbrock(2, 0.05, 5.0, 1.0), -12, 14, -30, 160, 1200), 1.0, 0.01);
  EXPECT_NEAR(trapezoid_2d(GaussianCopulaGumbel(2, 10.0, 0.4, 0.5), -5, 35, -5, 35, 500), 1.0, 0.01);
}

TEST(Density, GaussianSampleMean) {
  const Matrix s = IndependentGaussian::standard(2)->sample_direct(100000, 3);
  EXPECT_LT(std::abs(s.col(0).mean()), 0.02);
  EXPECT_LT(std::abs(s.col(1).mean()), 0.02);
}

TEST(Density, SamplingIsReproducible) {
  const NealFunnel f(3);
  EXPECT_EQ(f.sample_direct(50, 9), f.sample_direct(50, 9));
}

TEST(Density, FunnelLastCoordinateIsStandardNormal) {
  const Matrix s = NealFunnel(2).sample_direct(1000000, 5);
  const Vector c = s.col(1);
  const double var = (c.array() - c.mean()).square().sum() / (c.size() - 1);
  EXPECT_NEAR(var, 1.0, 0.02);
}

TEST(Density, CopulaGumbelMarginalsAndCorrelation) {
  const GaussianCopulaGumbel m(2, 10.0, 0.4, 0.95);
  const Matrix s = m.sample_direct(1000000, 11);
  EXPECT_NEAR(s.col(0).mean(), 10.0, 0.05);
  EXPECT_NEAR(s.col(1).mean(), 10.0, 0.05);
  const Vector a = s.col(0).array() - s.col(0).mean();
  const Vector b = s.col(1).array() - s.col(1).mean();
  EXPECT_NEAR(a.dot(b) / std::sqrt(a.squaredNorm() * b.squaredNorm()), 0.95, 0.01);
}

TEST(Density, GumbelMomentsMatchByQuadrature) {
  const GumbelParams g = gumbel_params_from_moments(10.0, 0.4);
  // Closed form: scale = sd sqrt(6) / pi, location = mean - gamma scale.
  EXPECT_NEAR(g.scale, 4.0 * std::sqrt(6.0) / kPi, 1e-14);
  EXPECT_NEAR(g.scale, 3.1188, 5e-4);
  EXPECT_NEAR(g.location, 8.1998, 5e-4);
  auto pdf = [&](double x) {
    const double z = (x - g.location) / g.scale;
    return std::exp(-z - std::exp(-z)) / g.scale;
  };
  using boost::math::quadrature::gauss_kronrod;
  const double lo = g.location - 30 * g.scale, hi = g.location + 60 * g.scale;
  const double mean = gauss_kronrod<double, 61>::integrate([&](double x) { return x * pdf(x); }, lo, hi, 10, 1e-13);
  const double var =
      gauss_kronrod<double, 61>::integrate([&](double x) { return (x - 10) * (x - 10) * pdf(x); }, lo, hi, 10, 1e-13);
  EXPECT_NEAR(mean, 10.0, 1e-8);
  EXPECT_NEAR(std::sqrt(var), 4.0, 1e-8);
}

TEST(Density, GumbelMomentEdgeCases) {
  const GumbelParams z = gumbel_params_from_moments(0.0, 2.0);
  EXPECT_NEAR(z.location, -z.scale * 0.5772156649015329, 1e-12);
  EXPECT_NEAR(gumbel_params_from_moments(1.0, 1e-9).scale, 7.797e-10, 1e-13);
}

TEST(Density, OutOfSupportConvention) {
  const IndependentLognormal m(2, 1.0, 1.0);
  const LogDensity r = m.evaluate(vec({-1.0, 1.0}));
  EXPECT_FALSE(r.in_support());
  EXPECT_EQ(r.grad, Vector::Zero(2));
}

TEST(Density, RejectsBadParameters) {
  EXPECT_THROW(IndependentGaussian(vec({0.0}), vec({0.0})), InvalidInput);
  EXPECT_THROW(NealFunnel(1), InvalidInput);
  EXPECT_THROW(IndependentGaussian::standard(2)->evaluate(vec({1.0})), InvalidInput);
}

TEST(Gmm, StandardNormal) {
  const GaussianMixture q({1.0}, {Vector::Zero(2)}, {Matrix::Identity(2, 2)});
  EXPECT_NEAR(eval_gmm(q, Vector::Zero(2)), -std::log(2.0 * kPi), 1e-14);
}

TEST(Gmm, IdenticalComponentsCollapse) {
  Matrix c(2, 2);
  c << 2.0, 0.3, 0.3, 0.5;
  const GaussianMixture one({1.0}, {vec({1.0, 2.0})}, {c});
  const GaussianMixture two({0.5, 0.5}, {vec({1.0, 2.0}), vec({1.0, 2.0})}, {c, c});
  const Vector x = vec({0.3, 1.1});
  EXPECT_NEAR(eval_gmm(one, x), eval_gmm(two, x), 1e-14);
}

TEST(Gmm, MatchesDirectSum) {
  Matrix c1(2, 2), c2(2, 2);
  c1 << 1.0, 0.5, 0.5, 2.0;
  c2 << 0.3, -0.1, -0.1, 0.4;
  const std::vector<Vector> mu{vec({0.0, 1.0}), vec({2.0, -1.0})};
  const GaussianMixture q({0.35, 0.65}, mu, {c1, c2});
  auto normal = [](const Vector& x, const Vector& m, const Matrix& s) {
    const Vector r = x - m;
    return std::exp(-0.5 * r.dot(s.inverse() * r)) / (2.0 * kPi * std::sqrt(s.determinant()));
  };
  Rng rng(4);
  std::normal_distribution<double> n01;
  for (int k = 0; k < 5; ++k) {
    const Vector x = vec({n01(rng), n01(rng)});
    const double direct = 0.35 * normal(x, mu[0], c1) + 0.65 * normal(x, mu[1], c2);
    EXPECT_NEAR(eval_gmm(q, x), std::log(direct), 1e-12);
  }
}

TEST(Gmm, PermutationInvariant) {
  const std::vector<Vector> mu{vec({0.0, 1.0}), vec({2.0, -1.0})};
  const GaussianMixture a({0.25, 0.75}, mu, {Matrix::Identity(2, 2), 2.0 * Matrix::Identity(2, 2)});
  const GaussianMixture b({0.75, 0.25}, {mu[1], mu[0]}, {2.0 * Matrix::Identity(2, 2), Matrix::Identity(2, 2)});
  const Vector x = vec({0.7, 0.2});
  EXPECT_NEAR(eval_gmm(a, x), eval_gmm(b, x), 1e-15);
}

TEST(Gmm, RejectsBadWeights) {
  EXPECT_THROW(GaussianMixture({0.5, 0.6}, {Vector::Zero(1), Vector::Zero(1)},
                               {Matrix::Identity(1, 1), Matrix::Identity(1, 1)}),
               InvalidInput);
}
