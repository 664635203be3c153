#include "astpa/limit_state.hpp"
#include "astpa/transforms.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <random>

using namespace astpa;

TEST(LimitState, QuadraticGumbel) {
  QuadraticGumbelLimitState g(2, 70.0, 2);
  Vector x(2);
  x << 10.0, 10.0;
  EXPECT_NEAR(g.value(x), 70.0 - 20.0 / std::sqrt(2.0), 1e-12);
}

TEST(LimitState, Hyperspherical) {
  HypersphericalLimitState g(2, 2.0);
  Vector x(2);
  x << 0.0, -6.0;
  EXPECT_NEAR(g.value(x), -4.0, 1e-14);
}

TEST(LimitState, Octic) {
  OcticLimitState g(200, 15.0);
  EXPECT_NEAR(g.value(Vector::Ones(200)), 15.0 - 200.0 / std::sqrt(200.0) + 160.0 + 16.0 + 1.0, 1e-10);
}

TEST(LimitState, IndicatorIsBoundaryInclusive) {
  EXPECT_EQ(indicator(-0.001), 1);
  EXPECT_EQ(indicator(0.0), 1);
  EXPECT_EQ(indicator(1e-12), 0);
}

TEST(LimitState, CountsOneCallPerEvaluation) {
  LimitStateProblem p(std::make_shared<HypersphericalLimitState>(3, 2.0));
  Vector x = Vector::Ones(3);
  p.evaluate(x);
  x[0] = 0.5;
  p.evaluate(x);
  x[1] = -0.5;
  p.value(x);
  EXPECT_EQ(p.calls(), 3u);
}

TEST(LimitState, GradientsMatchFiniteDifferences) {
  std::vector<LimitStatePtr> fns{
      std::make_shared<QuadraticGumbelLimitState>(3, 70.0, 2), std::make_shared<LinearRosenbrockLimitState>(3),
      std::make_shared<HypersphericalLimitState>(4, 2.0), std::make_shared<OcticLimitState>(20, 15.0),
      std::make_shared<RingQuadraticLimitState>(3, 3.8)};
  Rng rng(2);
  std::normal_distribution<double> n01;
  for (const auto& f : fns) {
    for (int k = 0; k < 100; ++k) {
      Vector x(f->dimension());
      for (auto& e : x) e = f->family() == LimitStateFamily::kOcticLognormal ? std::exp(0.3 * n01(rng)) : 2.0 * n01(rng);
      if (f->family() == LimitStateFamily::kQuadraticGumbel) x.array() += 10.0;
      const LimitStateValue v = f->evaluate(x);
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = 1e-6 * (1.0 + std::abs(x[i]));
        Vector a = x, b = x;
        a[i] += h;
        b[i] -= h;
        const double fd = (f->value(a) - f->value(b)) / (2.0 * h);
        EXPECT_NEAR(fd, v.grad[i], 1e-5 * std::max(1.0, v.grad.lpNorm<Eigen::Infinity>())) << to_string(f->family());
      }
    }
  }
}

TEST(Transforms, Examples) {
  Vector one(1);
  one << 1.0;
  EXPECT_EQ(BoundSpec({Bound::lower_at(0.0)}).to_unbounded(one)[0], 0.0);
  Vector half(1);
  half << 0.5;
  EXPECT_EQ(BoundSpec({Bound::interval(0.0, 1.0)}).to_unbounded(half)[0], 0.0);
  Vector two(1);
  two << 2.0;
  EXPECT_EQ(BoundSpec({Bound::upper_at(3.0)}).to_unbounded(two)[0], 0.0);
}

TEST(Transforms, RoundTrip) {
  Rng rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const BoundSpec spec({Bound::lower_at(-1.0), Bound::upper_at(2.0), Bound::interval(-3.0, 5.0), Bound::unbounded()});
  for (int k = 0; k < 1000; ++k) {
    Vector x(4);
    x << -1.0 + 10.0 * u(rng), 2.0 - 10.0 * u(rng), -3.0 + 8.0 * u(rng), 20.0 * (u(rng) - 0.5);
    const Vector back = spec.to_bounded(spec.to_unbounded(x));
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(back[i], x[i], 1e-12 * std::max(1.0, std::abs(x[i])));
  }
}

TEST(Transforms, LognormalPushforwardIsGaussian) {
  auto logn = std::make_shared<IndependentLognormal>(2, 1.0, 0.5);
  const DensityPtr push = pushforward_log_density(BoundSpec::uniform(2, Bound::lower_at(0.0)), logn);
  const IndependentGaussian gauss(Vector::Constant(2, logn->log_mu()), Vector::Constant(2, logn->log_sigma()));
  Rng rng(3);
  std::normal_distribution<double> n01;
  for (int k = 0; k < 20; ++k) {
    Vector y(2);
    y << n01(rng), n01(rng);
    EXPECT_NEAR(push->evaluate(y).value, gauss.evaluate(y).value, 1e-12);
  }
}

TEST(Transforms, UnboundedSpecIsIdentity) {
  auto g = IndependentGaussian::standard(2);
  EXPECT_EQ(pushforward_log_density(BoundSpec{}, g), g);
  EXPECT_EQ(pushforward_log_density(BoundSpec::uniform(2, Bound::unbounded()), g), g);
}

namespace {

// Uniform(0, 1); the family tag is irrelevant to the pushforward.
class UnitUniform final : public DensityModel {
 public:
  DensityFamily family() const override { return DensityFamily::kIndependentGaussian; }
  std::size_t dimension() const override { return 1; }

 protected:
  LogDensity do_evaluate(const Vector& x) const override {
    LogDensity r;
    r.grad = Vector::Zero(1);
    r.value = x[0] > 0.0 && x[0] < 1.0 ? 0.0 : -std::numeric_limits<double>::infinity();
    return r;
  }
};

double grid_integral(const DensityModel& m, double lo, double hi, double h) {
  double acc = 0.0;
  Vector v(1);
  for (double y = lo; y <= hi; y += h) {
    v << y;
    acc += std::exp(m.evaluate(v).value) * h;
  }
  return acc;
}

}  // namespace

TEST(Transforms, UniformPushforwardIsLogistic) {
  const PushforwardDensity push(BoundSpec({Bound::interval(0.0, 1.0)}), std::make_shared<UnitUniform>());
  for (double y : {-5.0, -1.0, 0.0, 0.3, 2.0, 8.0}) {
    Vector v(1);
    v << y;
    const double logistic = std::exp(-y) / ((1.0 + std::exp(-y)) * (1.0 + std::exp(-y)));
    EXPECT_NEAR(std::exp(push.evaluate(v).value), logistic, 1e-14);
  }
  EXPECT_NEAR(grid_integral(push, -40.0, 40.0, 0.005), 1.0, 1e-3);
}

TEST(Transforms, IntervalPushforwardIntegratesToMass) {
  Vector m(1), s(1);
  m << 0.5;
  s << 1.2;
  const PushforwardDensity push(BoundSpec({Bound::interval(-2.0, 3.0)}), std::make_shared<IndependentGaussian>(m, s));
  // Mass of N(0.5, 1.2^2) on (-2, 3).
  const double mass =
      0.5 * (std::erf((3.0 - 0.5) / (1.2 * std::sqrt(2.0))) - std::erf((-2.0 - 0.5) / (1.2 * std::sqrt(2.0))));
  EXPECT_NEAR(grid_integral(push, -40.0, 40.0, 0.005), mass, 1e-3);
}
