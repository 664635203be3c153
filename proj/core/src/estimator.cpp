#include "astpa/estimator.hpp"

#include "astpa/ess.hpp"

#include <cmath>
#include <limits>

namespace astpa {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over (seed, stream)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ShiftedEstimate shifted_estimate(const ChainRun& run) {
  const std::size_t n = run.sample_count();
  if (n < 4) throw InvalidInput("shifted_estimate: need at least 4 post-burn-in states");
  const std::size_t off = run.burnin_iterations;
  ShiftedEstimate est;
  est.n = n;
  // Weights I_F pi / h; the chain only visits points where h > 0.
  std::vector<double> w(n, 0.0);
  double max_lw = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (indicator(run.g[off + i])) {
      ++est.failures;
      w[i] = run.log_base[off + i] - run.log_target[off + i];
      max_lw = std::max(max_lw, w[i]);
    }
  }
  est.ess_min = ess_min(run.samples());
  est.stride = thinning_stride(n, est.ess_min);
  est.n_thinned = (n + est.stride - 1) / est.stride;
  if (est.failures == 0) {
    est.log_value = -std::numeric_limits<double>::infinity();
    est.relative_variance = std::numeric_limits<double>::infinity();
    return est;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (indicator(run.g[off + i])) sum += std::exp(w[i] - max_lw);
  }
  est.log_value = max_lw + std::log(sum / static_cast<double>(n));
  double ss = 0.0;
  for (std::size_t i = 0; i < n; i += est.stride) {
    const double r = indicator(run.g[off + i]) ? std::exp(w[i] - est.log_value) : 0.0;
    ss += (r - 1.0) * (r - 1.0);
  }
  const double ns = static_cast<double>(est.n_thinned);
  est.relative_variance = ss / (ns * (ns - 1.0));
  return est;
}

double analytical_cov(double rv_p, double rv_c) {
  if (rv_p < 0.0 || rv_c < 0.0) throw InvalidInput("analytical_cov: negative variance");
  return std::sqrt(rv_p + rv_c + rv_p * rv_c);
}

double combine_log(double log_p_tilde, double log_c_h, std::optional<double> log_c_pi, std::vector<std::string>* warnings) {
  if (std::isnan(log_p_tilde) || !std::isfinite(log_c_h)) throw InvalidInput("combine: non-finite factor");
  double lp = log_p_tilde + log_c_h;
  if (log_c_pi) lp -= *log_c_pi;
  if (lp > 0.0 && warnings) warnings->push_back("estimate exceeds 1: poorly constructed target or too few samples");
  return lp;
}

EstimateReport run_astpa(const ProblemSetup& setup, const RunOptions& opt) {
  if (!setup.model || !setup.limit_state) throw InvalidInput("run_astpa: incomplete problem setup");
  const std::size_t d = setup.model->dimension();
  require_dimension(setup.mean, d, "run_astpa mean");
  if (opt.leapfrog_steps < 1) throw InvalidInput("run_astpa: leapfrog_steps must be >= 1");

  EstimateReport rep;
  auto problem = std::make_shared<LimitStateProblem>(setup.limit_state);

  // g at the mean fixes g_c and doubles as the first discovery iterate.
  const LimitStateValue at_mean = problem->evaluate(setup.mean);
  rep.g_at_mean = at_mean.g;
  const ScalingChoice sc = compute_gc(at_mean.g, opt.params.q);
  rep.g_c = sc.g_c;
  if (sc.mean_in_failure) rep.warnings.push_back("g at the mean is <= 0; using g_c = 1");

  const AstpaTarget target(setup.model, problem, opt.params, sc.g_c, setup.spec, opt.log_target_scale);
  const Vector y0 = setup.spec.empty() ? setup.mean : setup.spec.to_unbounded(setup.mean);
  const PointEval start = target.evaluate_with(y0, at_mean);

  const DiscoveryResult adam = discover(target, y0, opt.adam, start);
  rep.n_adam = adam.n_calls;
  rep.adam_converged = adam.converged;
  rep.placement = placement_check(target, adam.eval);
  if (rep.placement.verdict == Placement::kRelaxNeeded) {
    rep.warnings.push_back("discovery ended far from the rare-event domain; consider a larger sigma or q");
  }

  std::size_t n = opt.budget.n, nb = opt.budget.n_burnin, m = opt.budget.m;
  if (opt.budget.n_total > 0) {
    if (opt.budget.n_total <= rep.n_adam + 20) throw InvalidInput("run_astpa: total budget exhausted by discovery");
    const double remaining = static_cast<double>(opt.budget.n_total - rep.n_adam);
    n = static_cast<std::size_t>(remaining / (1.0 + opt.budget.burnin_fraction + opt.budget.m_fraction));
    nb = static_cast<std::size_t>(std::lround(opt.budget.burnin_fraction * n));
    m = opt.budget.n_total - rep.n_adam - n - nb;
  }
  if (n < 10 || m < 2) throw InvalidInput("run_astpa: sample budget too small");

  SamplerConfig cfg;
  cfg.n_burnin = nb;
  cfg.n_samples = n;
  cfg.leapfrog_steps = opt.leapfrog_steps;
  cfg.seed = derive_seed(opt.seed, 1);
  ChainRun run;
  if (opt.sampler == SamplerKind::kQnp) {
    QnpConfig qc;
    qc.sampler = cfg;
    qc.diagonal = opt.diagonal_mass;
    qc.curvature_threshold = opt.curvature_threshold;
    qc.revert_below = opt.revert_below;
    run = qnp_chain(target, qc, adam.x, adam.eval);
  } else {
    run = hmcmc_chain(target, cfg, adam.x, adam.eval);
  }
  if (run.longest_rejection_run >= 100) {
    rep.warnings.push_back("chain rejected " + std::to_string(run.longest_rejection_run) + " consecutive proposals");
  }
  if (run.mass_fallback) rep.warnings.push_back("inverse Hessian not positive definite; used its diagonal");
  rep.n = run.sample_count() * static_cast<std::size_t>(opt.leapfrog_steps);
  rep.n_burnin = run.target_calls - rep.n;
  rep.acceptance_rate = run.acceptance_rate();
  rep.step_size = run.final_step_size;
  rep.bfgs_updates = run.bfgs_updates;

  const ShiftedEstimate shifted = shifted_estimate(run);
  rep.ess_min = shifted.ess_min;
  rep.stride = shifted.stride;
  rep.chain_failures = shifted.failures;
  rep.relative_var_p_tilde = shifted.relative_variance;

  // The mixture is fitted on every post-burn-in state, not the thinned set.
  const Matrix samples = run.samples();
  EmConfig em = opt.em ? *opt.em : EmConfig::for_dimension(d);
  const EmFit fit = fit_gmm(samples, em, derive_seed(opt.seed, 2));
  rep.gmm_components = fit.mixture.components();

  const NormalizingEstimate ch = estimate_ch(target, fit.mixture, m, derive_seed(opt.seed, 3));
  rep.m = m;
  rep.log_c_h = ch.log_value;
  rep.split_rule = ch.rule;
  rep.relative_var_c_h = ch.relative_variance;
  if (ch.dropped > 0) rep.warnings.push_back(std::to_string(ch.dropped) + " non-finite importance ratios dropped");

  rep.log_c_pi = setup.log_c_pi;
  if (shifted.failures == 0) {
    rep.warnings.push_back("no chain state reached the rare-event domain");
    rep.log_p = -std::numeric_limits<double>::infinity();
    rep.p = 0.0;
    rep.p_tilde = 0.0;
    rep.analytical_cov = std::numeric_limits<double>::infinity();
  } else {
    // The chain saw h without its constant factor.
    const double log_p_tilde = shifted.log_value - target.log_constant();
    rep.p_tilde = std::exp(log_p_tilde);
    rep.log_p = combine_log(log_p_tilde, ch.log_value, setup.log_c_pi, &rep.warnings);
    rep.p = std::exp(rep.log_p);
    rep.analytical_cov = analytical_cov(shifted.relative_variance, ch.relative_variance);
  }
  rep.model_calls = problem->calls();
  rep.n_total = rep.n_adam + rep.n_burnin + rep.n + rep.m;
  return rep;
}

}  // namespace astpa
