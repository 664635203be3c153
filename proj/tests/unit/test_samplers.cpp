#include "astpa/ess.hpp"
#include "astpa/hmcmc.hpp"
#include "astpa/qnp.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace astpa;

namespace {

class Flat final : public SamplingTarget {
 public:
  explicit Flat(std::size_t d) : d_(d) {}
  std::size_t dimension() const override { return d_; }
  PointEval evaluate(const Vector& x) const override {
    PointEval e;
    e.grad = Vector::Zero(x.size());
    return e;
  }

 private:
  std::size_t d_;
};

Vector normal(std::size_t d, Rng& rng) {
  std::normal_distribution<double> n01;
  Vector v(d);
  for (auto& e : v) e = n01(rng);
  return v;
}

Matrix random_spd(std::size_t d, Rng& rng) {
  Matrix q(d, d);
  for (Eigen::Index i = 0; i < q.size(); ++i) q.data()[i] = normal(1, rng)[0];
  return q * q.transpose() / static_cast<double>(d) + 0.3 * Matrix::Identity(d, d);
}

}  // namespace

TEST(Leapfrog, Reversible) {
  const DensityTarget t(std::make_shared<Rosenbrock>(2, 0.05, 5.0, 1.0));
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const Vector x = normal(2, rng), z = normal(2, rng);
    const MassMatrix m = MassMatrix::full(random_spd(2, rng));
    const LeapfrogResult f = leapfrog(t, x, z, t.evaluate(x), 0.01, 20, m);
    const LeapfrogResult b = leapfrog(t, f.x, -f.z, f.eval, 0.01, 20, m);
    EXPECT_LE((b.x - x).lpNorm<Eigen::Infinity>(), 1e-10);
    EXPECT_LE((b.z + z).lpNorm<Eigen::Infinity>(), 1e-10);
  }
}

TEST(Leapfrog, EnergyDrift) {
  const DensityTarget t(IndependentGaussian::standard(1));
  Vector x(1), z(1);
  x << 0.7;
  z << -1.1;
  const MassMatrix m = MassMatrix::identity(1);
  const LeapfrogResult r = leapfrog(t, x, z, t.evaluate(x), 0.01, 100, m);
  const double h0 = 0.5 * x.squaredNorm() + 0.5 * z.squaredNorm();
  const double h1 = 0.5 * r.x.squaredNorm() + 0.5 * r.z.squaredNorm();
  EXPECT_LE(std::abs(h1 - h0), 1e-3);
}

TEST(Leapfrog, FreeFlight) {
  const Flat t(3);
  Rng rng(2);
  const Vector x = normal(3, rng), z = normal(3, rng);
  const MassMatrix m = MassMatrix::diagonal(Vector::Constant(3, 4.0));
  const LeapfrogResult r = leapfrog(t, x, z, t.evaluate(x), 0.125, 8, m);
  EXPECT_LE((r.x - (x + 0.125 * 8 * 0.25 * z)).lpNorm<Eigen::Infinity>(), 1e-15);
  EXPECT_EQ(r.z, z);
}

TEST(Hmc, StandardGaussianMoments) {
  const DensityTarget t(IndependentGaussian::standard(2));
  SamplerConfig cfg;
  cfg.n_burnin = 1000;
  cfg.n_samples = 10000;
  cfg.seed = 5;
  const ChainRun run = hmcmc_chain(t, cfg, Vector::Zero(2));
  const Matrix s = run.samples();
  for (int j = 0; j < 2; ++j) {
    const Vector c = s.col(j);
    const double var = (c.array() - c.mean()).square().sum() / (c.size() - 1);
    EXPECT_LE(std::abs(c.mean()), 0.05);
    EXPECT_GE(var, 0.9);
    EXPECT_LE(var, 1.1);
  }
}

TEST(Hmc, Deterministic) {
  const DensityTarget t(std::make_shared<NealFunnel>(3));
  SamplerConfig cfg;
  cfg.n_burnin = 100;
  cfg.n_samples = 300;
  cfg.seed = 17;
  EXPECT_EQ(hmcmc_chain(t, cfg, Vector::Zero(3)).states, hmcmc_chain(t, cfg, Vector::Zero(3)).states);
}

TEST(Hmc, TinyStepAcceptsEverything) {
  const DensityTarget t(IndependentGaussian::standard(2));
  SamplerConfig cfg;
  cfg.adapt = false;
  cfg.step_size = 1e-6;
  cfg.n_samples = 200;
  const ChainRun run = hmcmc_chain(t, cfg, Vector::Zero(2));
  for (double a : run.accept_prob) EXPECT_GT(a, 1.0 - 1e-9);
}

TEST(Hmc, AdaptedAcceptanceNearTarget) {
  const DensityTarget t(IndependentGaussian::standard(10));
  SamplerConfig cfg;
  cfg.n_burnin = 1000;
  cfg.n_samples = 4000;
  cfg.seed = 3;
  const ChainRun run = hmcmc_chain(t, cfg, Vector::Zero(10));
  EXPECT_GE(run.acceptance_rate(), 0.55);
  EXPECT_LE(run.acceptance_rate(), 0.75);
}

TEST(DualAveraging, ZeroAcceptanceShrinksStep) {
  DualAveraging da(1.0);
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 50; ++k) {
    const double eps = da.update(0.0);
    EXPECT_LT(eps, prev);
    prev = eps;
  }
}

TEST(DualAveraging, TargetAcceptanceSettles) {
  DualAveraging da(0.5);
  double prev = da.update(0.65), prev_delta = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100; ++k) {
    const double eps = da.update(0.65);
    const double delta = std::abs(std::log(eps) - std::log(prev));
    EXPECT_LE(delta, prev_delta + 1e-12);
    prev_delta = delta;
    prev = eps;
  }
}

TEST(Ess, ThinningStride) {
  EXPECT_EQ(thinning_stride(4000, 100.0), 10u);
  EXPECT_EQ(thinning_stride(4000, 1000.0), 3u);
  EXPECT_EQ(thinning_stride(4000, 1.0), 30u);
}

TEST(Ess, IidAndAutoregressive) {
  Rng rng(6);
  std::normal_distribution<double> n01;
  std::vector<double> iid(10000);
  for (auto& v : iid) v = n01(rng);
  const double r = effective_sample_size(iid) / iid.size();
  EXPECT_GE(r, 0.8);
  EXPECT_LE(r, 1.2);
  std::vector<double> ar(100000);
  double prev = 0.0;
  for (auto& v : ar) v = prev = 0.5 * prev + n01(rng);
  EXPECT_NEAR(effective_sample_size(ar) / ar.size() * 3.0, 1.0, 0.25);
}

TEST(Bfgs, IdentityFixedPoint) {
  BfgsState w = BfgsState::identity(3);
  const Vector s = Vector::Constant(3, 2.0);
  ASSERT_TRUE(bfgs_update(w, s, s));
  EXPECT_LE((w.dense() - Matrix::Identity(3, 3)).lpNorm<Eigen::Infinity>(), 1e-15);
}

TEST(Bfgs, OneDimensionalSecant) {
  BfgsState w = BfgsState::identity(1);
  Vector s(1), y(1);
  s << 8.0;
  y << 2.0;
  ASSERT_TRUE(bfgs_update(w, s, y));
  EXPECT_DOUBLE_EQ(w.dense()(0, 0), 4.0);
}

TEST(Bfgs, SkipsLowCurvature) {
  BfgsState w = BfgsState::identity(2);
  const Vector s = Vector::Constant(2, 1.0);
  EXPECT_FALSE(bfgs_update(w, s, s));  // s'y = 2 <= 10
  EXPECT_EQ(w.dense(), Matrix(Matrix::Identity(2, 2)));
  EXPECT_EQ(w.skips, 1u);
}

TEST(Bfgs, ConjugateDirectionsRecoverInverseHessian) {
  Rng rng(12);
  const std::size_t d = 5;
  const Matrix h = random_spd(d, rng) * 5.0;
  // H-conjugate directions by Gram-Schmidt in the H inner product.
  std::vector<Vector> dirs;
  for (std::size_t i = 0; i < d; ++i) {
    Vector v = normal(d, rng);
    for (const auto& u : dirs) v -= (u.dot(h * v) / u.dot(h * u)) * u;
    v *= 5.0 / std::sqrt(v.dot(h * v));  // s'Hs = 25 > 10
    dirs.push_back(v);
  }
  BfgsState w = BfgsState::identity(d);
  for (const auto& s : dirs) ASSERT_TRUE(bfgs_update(w, s, h * s));
  EXPECT_LE((w.dense() - h.inverse()).norm(), 1e-6);
  EXPECT_LE((w.dense() - w.dense().transpose()).lpNorm<Eigen::Infinity>(), 1e-10);
}

TEST(QnpLeapfrog, IdentityMatchesStandardLeapfrog) {
  const DensityTarget t(std::make_shared<NealFunnel>(3));
  Rng rng(7);
  const Vector x = normal(3, rng), z = normal(3, rng);
  const LeapfrogResult a = leapfrog(t, x, z, t.evaluate(x), 0.1, 5, MassMatrix::identity(3));
  const BurnInStep b = leapfrog_burnin(t, x, z, t.evaluate(x), 0.1, BfgsState::identity(3), 5);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.z, b.z);
}

TEST(QnpLeapfrog, Reversible) {
  const DensityTarget t(std::make_shared<Rosenbrock>(3, 1.0, 5.0, 0.5));
  Rng rng(8);
  for (int k = 0; k < 20; ++k) {
    const Vector x = normal(3, rng), z = normal(3, rng);
    const BfgsState b = BfgsState::full(random_spd(3, rng));
    const BurnInStep f = leapfrog_burnin(t, x, z, t.evaluate(x), 0.02, b, 10);
    const BurnInStep r = leapfrog_burnin(t, f.x, -f.z, f.eval, 0.02, b, 10);
    EXPECT_LE((r.x - x).lpNorm<Eigen::Infinity>(), 1e-10);
  }
}

TEST(QnpLeapfrog, ExactPreconditioningOnAnisotropicGaussian) {
  Vector sd(2);
  sd << 1.0, 100.0;
  const DensityTarget t(std::make_shared<IndependentGaussian>(Vector::Zero(2), sd));
  // x moves by eps B z and z by eps B grad, so B = Sigma^{1/2} whitens the target.
  Matrix root = Matrix::Zero(2, 2);
  root.diagonal() = sd;
  const BfgsState b = BfgsState::full(root);
  const DensityTarget white(std::make_shared<IndependentGaussian>(Vector::Zero(2), Vector::Ones(2)));
  const BfgsState eye = BfgsState::identity(2);
  auto accept = [](const DensityTarget& target, const BfgsState& w, const Vector& x, const Vector& z) {
    const PointEval e = target.evaluate(x);
    const BurnInStep s = leapfrog_burnin(target, x, z, e, 1.0, w, 1);
    const double dh = (-s.eval.log_target + 0.5 * s.z.squaredNorm()) - (-e.log_target + 0.5 * z.squaredNorm());
    return std::min(1.0, std::exp(-dh));
  };
  Rng rng(9);
  double acc = 0.0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    const Vector u = normal(2, rng);
    const Vector z = normal(2, rng);
    const double a = accept(t, b, u.cwiseProduct(sd), z);
    // Whitened, the move is a unit-oscillator step, whatever the conditioning.
    ASSERT_NEAR(a, accept(white, eye, u, z), 1e-9);
    acc += a;
  }
  // One unit-step leapfrog on a standard 2-D Gaussian accepts 0.876 on
  // average (independent Monte Carlo, 1e7 draws); SE here is about 0.001.
  EXPECT_NEAR(acc / n, 0.876, 0.01);
}

TEST(Qnp, WithoutUpdatesMatchesHmc) {
  const DensityTarget t(std::make_shared<Rosenbrock>(2, 0.05, 5.0, 1.0));
  SamplerConfig cfg;
  cfg.n_burnin = 200;
  cfg.n_samples = 500;
  cfg.seed = 21;
  QnpConfig qc;
  qc.sampler = cfg;
  qc.curvature_threshold = std::numeric_limits<double>::infinity();
  const ChainRun q = qnp_chain(t, qc, Vector::Ones(2));
  const ChainRun h = hmcmc_chain(t, cfg, Vector::Ones(2), std::nullopt, MassMatrix::identity(2));
  EXPECT_EQ(q.states, h.states);
}

TEST(Qnp, SymmetricPositiveDefiniteAfterUpdates) {
  Rng rng(10);
  BfgsState w = BfgsState::identity(5);
  for (int k = 0; k < 2000; ++k) {
    bfgs_update(w, 3.0 * normal(5, rng), 3.0 * normal(5, rng));
    const Matrix m = w.dense();
    ASSERT_LE((m - m.transpose()).lpNorm<Eigen::Infinity>(), 1e-10);
    ASSERT_GT(Eigen::SelfAdjointEigenSolver<Matrix>(m).eigenvalues()[0], 0.0);
  }
}

TEST(Mala, IdentityMatricesAgree) {
  const DensityTarget t(std::make_shared<NealFunnel>(5));
  Rng rng(11);
  for (QnpPhase phase : {QnpPhase::kBurnIn, QnpPhase::kSampling}) {
    const MalaEquivalence r =
        verify_mala_equivalence(t, normal(5, rng), 3, 0.3, Matrix::Identity(5, 5), Matrix::Identity(5, 5), phase);
    EXPECT_LE(r.delta_proposal, 1e-12);
    EXPECT_LE(r.delta_acceptance, 1e-12);
    EXPECT_TRUE(r.same_decision);
  }
}

TEST(Mala, RandomPreconditioners) {
  const DensityTarget t(std::make_shared<NealFunnel>(5));
  Rng rng(12);
  for (int k = 0; k < 50; ++k) {
    const Vector x = normal(5, rng);
    const MalaEquivalence burn =
        verify_mala_equivalence(t, x, k, 0.2, random_spd(5, rng), Matrix::Identity(5, 5), QnpPhase::kBurnIn);
    EXPECT_LE(burn.delta_proposal, 1e-10);
    EXPECT_LE(burn.delta_acceptance, 1e-10);
    const MalaEquivalence samp =
        verify_mala_equivalence(t, x, k, 0.2, random_spd(5, rng), random_spd(5, rng), QnpPhase::kSampling);
    EXPECT_LE(samp.delta_proposal, 1e-10);
    EXPECT_LE(samp.delta_acceptance, 1e-10);
  }
}

TEST(Qnp, BeatsHmcOnIllConditionedGaussian) {
  // d = 50, standard deviations spanning two decades (condition number 1e4).
  const std::size_t d = 50;
  const Vector sd = Vector::LinSpaced(d, 0.0, 2.0).unaryExpr([](double e) { return std::pow(10.0, e); });
  const DensityTarget t(std::make_shared<IndependentGaussian>(Vector::Zero(d), sd));
  SamplerConfig cfg;
  cfg.n_burnin = 1000;
  cfg.n_samples = 3000;
  cfg.seed = 31;
  QnpConfig qc;
  qc.sampler = cfg;
  const ChainRun q = qnp_chain(t, qc, Vector::Zero(d));
  const ChainRun h = hmcmc_chain(t, cfg, Vector::Zero(d));
  EXPECT_EQ(q.target_calls, h.target_calls);
  const double ess_q = ess_min(q.samples()), ess_h = ess_min(h.samples());
  EXPECT_GE(ess_q, 5.0 * ess_h) << ess_q << " vs " << ess_h;
}
