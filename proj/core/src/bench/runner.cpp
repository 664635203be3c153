#include "astpa/bench/runner.hpp"

#include "astpa/baselines.hpp"
#include "astpa/ess.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace astpa::bench {

RunOptions astpa_options(const BenchmarkSpec& spec, const RunRequest& req, std::uint64_t seed) {
  RunOptions o;
  o.params = spec.params;
  o.curvature_threshold = spec.curvature_threshold;
  if (req.sigma) o.params.sigma = *req.sigma;
  if (req.q) o.params.q = *req.q;
  o.sampler = req.estimator == EstimatorKind::kAstpaHmc ? SamplerKind::kHmc : SamplerKind::kQnp;
  o.diagonal_mass = req.diagonal_mass.value_or(spec.diagonal);
  o.adam.max_iterations = spec.adam_iterations;
  o.budget.burnin_fraction = spec.burnin_fraction;
  o.budget.m_fraction = spec.m_fraction;
  if (req.n || req.n_burnin || req.m) {
    if (!(req.n && req.n_burnin && req.m)) throw InvalidInput("--n, --burnin and --m must be given together");
    o.budget.n = *req.n;
    o.budget.n_burnin = *req.n_burnin;
    o.budget.m = *req.m;
  } else {
    o.budget.n_total = req.n_total.value_or(o.sampler == SamplerKind::kHmc ? spec.n_total_hmc : spec.n_total_qnp);
  }
  o.seed = seed;
  return o;
}

namespace {

// Thinned MCMC draws from an unnormalized model, used where direct sampling
// is unavailable.
Matrix mcmc_draws(const DensityPtr& model, std::size_t n, std::uint64_t seed) {
  const DensityTarget target(model);
  SamplerConfig sc;
  sc.n_burnin = 1000;
  sc.n_samples = 10 * n;
  sc.seed = seed;
  const ChainRun run = hmcmc_chain(target, sc, Vector::Zero(model->dimension()));
  const Matrix s = run.samples();
  Matrix out(n, s.cols());
  for (std::size_t i = 0; i < n; ++i) out.row(i) = s.row(i * 10);
  return out;
}

TrialRecord run_trial(const BenchmarkSpec& spec, const RunRequest& req, ProblemSetup setup, std::size_t index) {
  TrialRecord t;
  t.index = index;
  t.seed = req.seed + index;
  try {
    switch (req.estimator) {
      case EstimatorKind::kAstpaQnp:
      case EstimatorKind::kAstpaHmc: {
        const EstimateReport r = run_astpa(setup, astpa_options(spec, req, t.seed));
        t.p = r.p;
        t.cov = r.analytical_cov;
        t.n_total = r.n_total;
        t.n_adam = r.n_adam;
        t.n_burnin = r.n_burnin;
        t.n = r.n;
        t.m = r.m;
        t.ess_min = r.ess_min;
        t.acceptance_rate = r.acceptance_rate;
        t.warnings = r.warnings;
        break;
      }
      case EstimatorKind::kMc: {
        const LimitStateProblem problem(setup.limit_state);
        const std::size_t n = req.n_total.value_or(spec.mc_n);
        CrudeMcResult r;
        if (setup.model->has_direct_sampler()) {
          r = crude_mc(problem, *setup.model, n, t.seed);
        } else {
          r = crude_mc_from_samples(problem, mcmc_draws(setup.model, n, t.seed));
        }
        t.p = r.p;
        t.cov = r.cov;
        t.n = r.n;
        t.n_total = problem.calls();
        break;
      }
      case EstimatorKind::kSus: {
        const LimitStateProblem problem(setup.limit_state);
        SusConfig cfg;
        cfg.n_per_level = req.n_total.value_or(spec.sus_n);
        SusResult r;
        if (spec.sus_space == SusSpaceKind::kStandardNormal) {
          const StandardNormalSpace space(setup.model->dimension(), spec.from_standard_normal);
          r = subset_simulation(problem, space, cfg, t.seed);
        } else {
          const ModelSpace space(setup.model);
          std::optional<Matrix> first;
          if (!setup.model->has_direct_sampler()) first = mcmc_draws(setup.model, cfg.n_per_level, t.seed);
          r = subset_simulation(problem, space, cfg, t.seed, first);
        }
        t.p = r.p;
        t.cov = std::numeric_limits<double>::quiet_NaN();
        t.n_total = r.model_calls;
        break;
      }
    }
    t.ok = std::isfinite(t.p);
    if (!t.ok) t.error = "non-finite estimate";
  } catch (const std::exception& e) {
    t.ok = false;
    t.error = e.what();
  }
  return t;
}

}  // namespace

double estimate_log_c_pi(const BenchmarkSpec& spec, std::uint64_t seed) {
  const ProblemSetup setup = spec.make();
  return estimate_c_pi(setup.model, setup.mean, spec.c_pi, seed).log_value;
}

TrialSummary run_benchmark(const RunRequest& req) {
  const BenchmarkSpec& spec = find_benchmark(req.problem);
  if (req.reps == 0) throw InvalidInput("reps must be positive");
  TrialSummary s;
  s.problem = spec.id;
  s.estimator = to_string(req.estimator);
  s.seed_base = req.seed;
  s.reps = req.reps;
  s.sigma = req.sigma.value_or(spec.params.sigma);
  s.q = req.q.value_or(spec.params.q);
  s.reference_p = spec.reference.monte_carlo_p > 0.0 ? spec.reference.monte_carlo_p : spec.reference.qnp_p;

  ProblemSetup setup = spec.make();
  const bool astpa = req.estimator == EstimatorKind::kAstpaQnp || req.estimator == EstimatorKind::kAstpaHmc;
  if (spec.unnormalized && astpa) {
    s.log_c_pi = estimate_c_pi(setup.model, setup.mean, spec.c_pi, derive_seed(req.seed, 99)).log_value;
    setup.log_c_pi = s.log_c_pi;
  }

  s.trials.resize(req.reps);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < req.reps; i = next++) s.trials[i] = run_trial(spec, req, setup, i);
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(req.threads, req.reps));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<double> ps;
  double cov_sum = 0.0, n_sum = 0.0;
  std::size_t cov_count = 0;
  for (const auto& t : s.trials) {
    if (!t.ok) {
      ++s.failed;
      continue;
    }
    ps.push_back(t.p);
    n_sum += static_cast<double>(t.n_total);
    if (std::isfinite(t.cov)) {
      cov_sum += t.cov;
      ++cov_count;
    }
  }
  // Undefined with fewer than two successful trials.
  s.sampling_cov = std::numeric_limits<double>::quiet_NaN();
  if (!ps.empty()) {
    double mean = 0.0;
    for (double p : ps) mean += p;
    mean /= static_cast<double>(ps.size());
    s.mean_p = mean;
    s.mean_n_total = n_sum / static_cast<double>(ps.size());
    if (ps.size() > 1 && mean > 0.0) {
      double ss = 0.0;
      for (double p : ps) ss += (p - mean) * (p - mean);
      s.sampling_cov = std::sqrt(ss / static_cast<double>(ps.size() - 1)) / mean;
    }
  }
  s.mean_analytical_cov = cov_count ? cov_sum / static_cast<double>(cov_count) : std::numeric_limits<double>::quiet_NaN();
  return s;
}

}  // namespace astpa::bench
