#include "astpa/baselines.hpp"
#include "astpa/estimator.hpp"
#include "astpa/math.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace astpa;

namespace {

ChainRun synthetic_run(std::size_t n, std::size_t in_failure, double log_l) {
  ChainRun run;
  run.states = Matrix::Zero(n, 1);
  for (std::size_t i = 0; i < n; ++i) run.states(i, 0) = std::sin(0.37 * i);
  for (std::size_t i = 0; i < n; ++i) {
    const bool f = i < in_failure;
    run.g.push_back(f ? -1.0 : 1.0);
    run.log_base.push_back(-0.5 * i / n);
    run.log_target.push_back(run.log_base.back() + (f ? log_l : -30.0));
  }
  return run;
}

ProblemSetup linear_problem(double beta) {
  ProblemSetup s;
  s.name = "linear";
  s.model = IndependentGaussian::standard(2);
  Vector a(2);
  a << 1.0, 1.0;
  a /= std::sqrt(2.0);
  s.limit_state = std::make_shared<LinearLimitState>(a, beta);
  s.mean = Vector::Zero(2);
  return s;
}

}  // namespace

TEST(Estimator, ShiftedEstimateCases) {
  EXPECT_EQ(shifted_estimate(synthetic_run(100, 0, 0.0)).value(), 0.0);
  EXPECT_NEAR(shifted_estimate(synthetic_run(100, 100, 0.0)).value(), 1.0, 1e-14);
  EXPECT_NEAR(shifted_estimate(synthetic_run(100, 50, std::log(0.5))).value(), 1.0, 1e-14);
}

TEST(Estimator, Combine) {
  EXPECT_NEAR(std::exp(combine_log(std::log(0.5), std::log(2e-6), std::nullopt)), 1e-6, 1e-20);
  EXPECT_NEAR(std::exp(combine_log(0.0, std::log(3e-5), std::nullopt)), 3e-5, 1e-19);
  std::vector<std::string> w;
  EXPECT_EQ(std::exp(combine_log(-std::numeric_limits<double>::infinity(), 0.0, std::nullopt, &w)), 0.0);
}

TEST(Estimator, AnalyticalCovCollapses) {
  EXPECT_DOUBLE_EQ(analytical_cov(0.0, 0.04), 0.2);
  EXPECT_DOUBLE_EQ(analytical_cov(0.09, 0.0), 0.3);
  EXPECT_NEAR(analytical_cov(0.01, 0.04), std::sqrt(0.01 + 0.04 + 0.0004), 1e-15);
}

TEST(Estimator, LedgerMatchesCallCounter) {
  RunOptions o;
  o.budget.n_total = 1500;
  o.seed = 4;
  const EstimateReport r = run_astpa(linear_problem(3.5), o);
  EXPECT_EQ(r.n_total, r.model_calls);
  EXPECT_EQ(r.n_total, 1500u);
  EXPECT_EQ(r.n_adam + r.n_burnin + r.n + r.m, r.n_total);
}

TEST(Estimator, ScaleInvariance) {
  RunOptions o;
  o.budget.n_total = 1500;
  o.seed = 9;
  const EstimateReport a = run_astpa(linear_problem(3.5), o);
  o.log_target_scale = std::log(1e3);
  const EstimateReport b = run_astpa(linear_problem(3.5), o);
  EXPECT_NEAR(b.p / a.p, 1.0, 1e-12);
  EXPECT_NEAR(b.log_c_h - a.log_c_h, std::log(1e3), 1e-9);
}

TEST(Estimator, UnbiasedOnLinearGaussianWithinTwoStandardErrors) {
  const double beta = 3.5, exact = std_normal_sf(beta);
  RunOptions o;
  o.budget.n_total = 2000;
  double sum = 0.0, sum2 = 0.0;
  const int n = 100;
  for (int k = 0; k < n; ++k) {
    o.seed = 1000 + k;
    const double p = run_astpa(linear_problem(beta), o).p;
    sum += p;
    sum2 += p * p;
  }
  const double mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / (n - 1));
  EXPECT_LE(std::abs(mean - exact), 2.0 * se) << mean << " vs " << exact;
}

TEST(Estimator, Deterministic) {
  RunOptions o;
  o.budget.n_total = 1200;
  o.seed = 77;
  const EstimateReport a = run_astpa(linear_problem(3.0), o);
  const EstimateReport b = run_astpa(linear_problem(3.0), o);
  EXPECT_EQ(a.p, b.p);
  EXPECT_EQ(a.analytical_cov, b.analytical_cov);
}

TEST(Baselines, CrudeMcFromSamples) {
  Matrix s = Matrix::Zero(1000, 2);
  for (int i = 0; i < 5; ++i) s.row(i) << 10.0, 10.0;
  const LimitStateProblem p(linear_problem(3.0).limit_state);
  const CrudeMcResult r = crude_mc_from_samples(p, s);
  EXPECT_EQ(r.failures, 5u);
  EXPECT_DOUBLE_EQ(r.p, 5e-3);
  Matrix half = Matrix::Zero(100, 2);
  for (int i = 0; i < 50; ++i) half.row(i) << 10.0, 10.0;
  EXPECT_NEAR(crude_mc_from_samples(p, half).cov, 0.1, 1e-15);
}

TEST(Baselines, CrudeMcUnbiased) {
  const double beta = 1.5, exact = std_normal_sf(beta);
  const ProblemSetup s = linear_problem(beta);
  double sum = 0.0, sum2 = 0.0;
  const int n = 100;
  for (int k = 0; k < n; ++k) {
    const double p = crude_mc(LimitStateProblem(s.limit_state), *s.model, 2000, k + 1).p;
    sum += p;
    sum2 += p * p;
  }
  const double mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / (n - 1));
  EXPECT_LE(std::abs(mean - exact), 2.0 * se);
}

TEST(Baselines, SubsetSimulation) {
  const ProblemSetup s = linear_problem(3.5);
  const LimitStateProblem p(s.limit_state);
  const StandardNormalSpace space(2, {});
  SusConfig cfg;
  const SusResult r = subset_simulation(p, space, cfg, 3);
  EXPECT_GT(r.levels, 1u);
  EXPECT_GT(r.p, std_normal_sf(3.5) / 5.0);
  EXPECT_LT(r.p, std_normal_sf(3.5) * 5.0);
  EXPECT_EQ(r.model_calls, p.calls());
}

TEST(Baselines, SubsetSimulationSingleLevel) {
  const ProblemSetup s = linear_problem(0.0);
  const LimitStateProblem p(s.limit_state);
  const SusResult r = subset_simulation(p, StandardNormalSpace(2, {}), SusConfig{}, 5);
  EXPECT_EQ(r.levels, 1u);
  EXPECT_NEAR(r.p, 0.5, 0.05);
  EXPECT_EQ(r.p * 1000.0, std::round(r.p * 1000.0));
}
