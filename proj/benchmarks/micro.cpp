// Micro benchmarks of the per-call hot paths.
#include "astpa/bench/registry.hpp"
#include "astpa/em.hpp"
#include "astpa/gmm.hpp"
#include "astpa/hmcmc.hpp"
#include "astpa/iis.hpp"
#include "astpa/qnp.hpp"
#include "astpa/target.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace astpa;

Vector draw(std::size_t d, Rng& rng) {
  std::normal_distribution<double> n01;
  Vector v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = n01(rng);
  return v;
}

std::shared_ptr<AstpaTarget> registry_target(const std::string& id) {
  const bench::BenchmarkSpec& spec = bench::find_benchmark(id);
  const ProblemSetup setup = spec.make();
  auto problem = std::make_shared<LimitStateProblem>(setup.limit_state);
  const double gc = compute_gc(problem->value(setup.mean), spec.params.q).g_c;
  return std::make_shared<AstpaTarget>(setup.model, problem, spec.params, gc, setup.spec);
}

void BM_FunnelDensity(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const NealFunnel f(d);
  Rng rng(1);
  const Vector x = draw(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(f.evaluate(x));
}
BENCHMARK(BM_FunnelDensity)->Arg(2)->Arg(101);

void BM_TargetEvaluate(benchmark::State& state, const std::string& id) {
  const auto target = registry_target(id);
  Rng rng(2);
  const Vector x = draw(target->dimension(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(target->evaluate(x));
}
BENCHMARK_CAPTURE(BM_TargetEvaluate, ex1_d2, std::string("ex1-d2"));
BENCHMARK_CAPTURE(BM_TargetEvaluate, ex4_Y15, std::string("ex4-Y15"));

void BM_Leapfrog(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const DensityTarget t(std::make_shared<IndependentGaussian>(Vector::Zero(d), Vector::Ones(d)));
  const MassMatrix mass = MassMatrix::identity(d);
  Rng rng(3);
  const Vector x = draw(d, rng);
  const Vector z = draw(d, rng);
  const PointEval e = t.evaluate(x);
  for (auto _ : state) benchmark::DoNotOptimize(leapfrog(t, x, z, e, 0.1, 1, mass));
}
BENCHMARK(BM_Leapfrog)->Arg(2)->Arg(100);

void BM_BfgsUpdate(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const bool diagonal = state.range(1) != 0;
  Rng rng(4);
  const Vector s = draw(d, rng);
  const Vector y = 4.0 * s + 0.1 * draw(d, rng);
  for (auto _ : state) {
    BfgsState w = BfgsState::identity(d, diagonal, 0.0);
    benchmark::DoNotOptimize(bfgs_update(w, s, y));
  }
}
BENCHMARK(BM_BfgsUpdate)->Args({10, 0})->Args({100, 0})->Args({100, 1})->Args({1000, 1});

GaussianMixture mixture(std::size_t d, std::size_t k) {
  Rng rng(5);
  std::vector<double> w(k, 1.0 / static_cast<double>(k));
  std::vector<Vector> mu;
  std::vector<Matrix> cov;
  for (std::size_t j = 0; j < k; ++j) {
    mu.push_back(draw(d, rng));
    const Matrix a = Matrix::Random(d, d);
    cov.push_back(a * a.transpose() + Matrix::Identity(d, d));
  }
  return GaussianMixture(std::move(w), std::move(mu), std::move(cov));
}

void BM_GmmLogDensity(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const GaussianMixture q = mixture(d, 10);
  Rng rng(6);
  const Vector x = draw(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(q.log_density(x));
}
BENCHMARK(BM_GmmLogDensity)->Arg(2)->Arg(20);

void BM_EmFit(benchmark::State& state) {
  const GaussianMixture q = mixture(2, 3);
  const Matrix x = q.sample(2000, 7);
  EmConfig cfg = EmConfig::for_dimension(2);
  for (auto _ : state) benchmark::DoNotOptimize(fit_gmm(x, cfg, 8));
}
BENCHMARK(BM_EmFit)->Unit(benchmark::kMillisecond);

void BM_EstimateCh(benchmark::State& state) {
  const auto target = registry_target("ex1-d2");
  const GaussianMixture q = mixture(2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_ch(*target, q, 1000, 9));
}
BENCHMARK(BM_EstimateCh)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
