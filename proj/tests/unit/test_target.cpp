#include "astpa/discovery.hpp"
#include "astpa/math.hpp"
#include "astpa/target.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <memory>

using namespace astpa;

namespace {

AstpaTarget linear_target(double sigma, double g_c) {
  Vector a(2);
  a << 1.0, 0.0;
  auto problem = std::make_shared<LimitStateProblem>(std::make_shared<LinearLimitState>(a, 3.0));
  AstpaParams p;
  p.sigma = sigma;
  return AstpaTarget(IndependentGaussian::standard(2), problem, p, g_c);
}

// Adam on -log h with log h = -|x|^2 / 2 about a chosen minimizer.
class Bowl final : public SamplingTarget {
 public:
  explicit Bowl(Vector c) : c_(std::move(c)) {}
  std::size_t dimension() const override { return c_.size(); }
  PointEval evaluate(const Vector& x) const override {
    PointEval e;
    e.log_target = -0.5 * (x - c_).squaredNorm();
    e.log_base = e.log_target;
    e.grad = c_ - x;
    return e;
  }

 private:
  Vector c_;
};

}  // namespace

TEST(Target, ScalingRule) {
  EXPECT_DOUBLE_EQ(compute_gc(1e4, 20.0).g_c, 500.0);
  EXPECT_DOUBLE_EQ(1e4 / compute_gc(1e4, 20.0).g_c, 20.0);
  EXPECT_DOUBLE_EQ(compute_gc(15.0, 7.0).g_c, 1.0);
  EXPECT_DOUBLE_EQ(compute_gc(5.0, 10.0).g_c, 0.5);
  EXPECT_DOUBLE_EQ(compute_gc(-2.0, 10.0).g_c, 1.0);
  EXPECT_TRUE(compute_gc(-2.0, 10.0).mean_in_failure);
}

TEST(Target, MeanShiftOverSigma) {
  for (double s : {0.1, 0.2, 0.3}) EXPECT_NEAR(linear_target(s, 1.0).mu_g() / s, 1.2112, 5e-4);
}

TEST(Target, LikelihoodAtZeroIsPercentile) {
  for (double s : {0.1, 0.3}) {
    for (double gc : {1.0, 0.5, 500.0}) EXPECT_NEAR(linear_target(s, gc).log_likelihood(0.0), std::log(0.1), 1e-14);
  }
}

TEST(Target, LikelihoodLimits) {
  const AstpaTarget t = linear_target(0.1, 1.0);
  EXPECT_NEAR(t.log_likelihood(-1e6), 0.0, 1e-300);
  // sigma = 0.1, g = 1: z = (1 + mu_g) / (sqrt(3)/pi * 0.1); log l = -log1p(exp(z)).
  const long double width = std::sqrt(3.0L) / 3.14159265358979323846264338327950288L * 0.1L;
  const long double mu = -width * std::log(0.1L / 0.9L);
  const long double z = (1.0L + mu) / width;
  EXPECT_NEAR(static_cast<double>(z), 20.33, 1e-2);
  EXPECT_NEAR(t.log_likelihood(1.0), static_cast<double>(-std::log1p(std::exp(z))), 1e-12);
  EXPECT_TRUE(std::isfinite(t.log_likelihood(1e6)));
}

TEST(Target, LikelihoodDecreasingAndBounded) {
  const AstpaTarget t = linear_target(0.2, 2.0);
  double prev = 1.0;
  for (double g = -5.0; g <= 5.0; g += 0.01) {
    const double l = std::exp(t.log_likelihood(g));
    EXPECT_LT(l, prev);
    EXPECT_GT(l, 0.0);
    EXPECT_LE(l, 1.0);
    prev = l;
  }
}

TEST(Target, Composition) {
  const AstpaTarget t = linear_target(0.1, 1.0);
  Vector x(2);
  x << 3.0, 0.4;  // g = 0
  const double log_pi = IndependentGaussian::standard(2)->evaluate(x).value;
  EXPECT_NEAR(t.evaluate(x).log_target, std::log(0.1) + log_pi, 1e-13);
  x << 9.0, 0.4;  // deep failure
  EXPECT_NEAR(t.evaluate(x).log_target, IndependentGaussian::standard(2)->evaluate(x).value, 1e-17);
}

TEST(Target, NeverAmplifiesTheModel) {
  const AstpaTarget t = linear_target(0.3, 1.0);
  Rng rng(1);
  std::normal_distribution<double> n01;
  for (int k = 0; k < 200; ++k) {
    Vector x(2);
    x << 3.0 * n01(rng), n01(rng);
    EXPECT_LE(t.evaluate(x).log_target, t.evaluate(x).log_base);
  }
}

TEST(Discovery, FirstAdamStepIsLearningRate) {
  Vector c(1), x0(1);
  c << 0.0;
  x0 << 1.0;
  AdamConfig cfg;
  cfg.max_iterations = 2;
  const DiscoveryResult r = discover(Bowl(c), x0, cfg);
  ASSERT_EQ(r.trace.rows(), 2);
  EXPECT_NEAR(r.trace(1, 0), 0.9, 1e-7);
}

TEST(Discovery, ConvexBowl) {
  Vector c = Vector::LinSpaced(10, -2.0, 3.0);
  const DiscoveryResult r = discover(Bowl(c), Vector::Zero(10));
  EXPECT_LE(r.n_calls, 500u);
  EXPECT_EQ(static_cast<std::size_t>(r.trace.rows()), r.n_calls);
  EXPECT_LT((r.x - c).lpNorm<Eigen::Infinity>(), 1e-3);
  // Non-increasing objective over 50-iteration windows.
  for (std::size_t k = 50; k < r.objective.size(); k += 50) EXPECT_LE(r.objective[k], r.objective[k - 50] + 1e-12);
}

TEST(Discovery, FunnelTargetReachesTheBand) {
  auto problem = std::make_shared<LimitStateProblem>(std::make_shared<HypersphericalLimitState>(2, 2.0));
  const double gc = compute_gc(problem->value(Vector::Zero(2)), 20.0).g_c;
  const AstpaTarget t(std::make_shared<NealFunnel>(2), problem, AstpaParams{}, gc);
  const DiscoveryResult r = discover(t, Vector::Zero(2));
  EXPECT_TRUE(r.eval.g < 0.0 || std::abs(r.eval.g) <= 0.1 * gc) << r.eval.g;
  EXPECT_EQ(placement_check(t, r.eval).verdict, Placement::kOk);
}

TEST(Discovery, PlacementVerdicts) {
  const AstpaTarget t = linear_target(0.1, 1.0);
  const double width = std::sqrt(3.0) / kPi * 0.1;
  auto at_z = [&](double z) {
    PointEval e;
    e.g = z * width - t.mu_g();
    return placement_check(t, e).verdict;
  };
  PointEval inside;
  inside.g = -3.0;
  EXPECT_EQ(placement_check(t, inside).verdict, Placement::kOk);
  EXPECT_EQ(at_z(50.0), Placement::kRelaxNeeded);
  EXPECT_EQ(at_z(5.0), Placement::kOk);
}
