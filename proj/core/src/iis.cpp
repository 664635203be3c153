#include "astpa/iis.hpp"

#include "astpa/ess.hpp"
#include "astpa/math.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace astpa {

std::string to_string(SplitRule r) { return r == SplitRule::kAverage ? "average" : "minimum"; }

NormalizingEstimate combine_log_ratios(std::span<const double> log_ratios) {
  std::vector<double> lr;
  lr.reserve(log_ratios.size());
  NormalizingEstimate est;
  for (double v : log_ratios) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      ++est.dropped;
      continue;
    }
    lr.push_back(v);
  }
  const std::size_t m = lr.size();
  if (m < 2) throw StageError("iis", "fewer than two usable importance ratios");
  est.m = m;
  const std::size_t h = m / 2;
  const std::span<const double> all(lr);
  est.log_half1 = log_sum_exp(all.first(h)) - std::log(static_cast<double>(h));
  est.log_half2 = log_sum_exp(all.subspan(h)) - std::log(static_cast<double>(m - h));
  const double log_full = log_sum_exp(all) - std::log(static_cast<double>(m));
  if (!std::isfinite(log_full)) throw StageError("iis", "all importance ratios are zero");
  if (std::abs(est.log_half1 - est.log_half2) <= std::log(3.0)) {
    est.rule = SplitRule::kAverage;
    est.log_value = log_full;
  } else {
    est.rule = SplitRule::kMinimum;
    est.log_value = std::min(est.log_half1, est.log_half2);
  }
  double ss = 0.0;
  for (double v : lr) {
    const double r = std::exp(v - est.log_value) - 1.0;
    ss += r * r;
  }
  est.relative_variance = ss / (static_cast<double>(m) * static_cast<double>(m - 1));
  return est;
}

NormalizingEstimate estimate_ch(const SamplingTarget& h, const GaussianMixture& q, std::size_t m, std::uint64_t seed) {
  if (m < 2) throw InvalidInput("estimate_ch: need m >= 2");
  if (q.dimension() != h.dimension()) throw InvalidInput("estimate_ch: mixture dimension mismatch");
  Rng rng(seed);
  std::vector<double> lr(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vector x = q.sample(rng);
    const PointEval e = h.evaluate(x);
    lr[i] = e.log_target + h.log_constant() - q.log_density(x);
  }
  return combine_log_ratios(lr);
}

NormalizingEstimate estimate_c_pi(DensityPtr model, const Vector& x0, const CPiConfig& config, std::uint64_t seed) {
  if (!model) throw InvalidInput("estimate_c_pi: null model");
  if (config.n_pi < 20 || config.m_pi < 2) throw InvalidInput("estimate_c_pi: budget too small");
  const DensityTarget target(model);
  SamplerConfig sc;
  sc.n_burnin = static_cast<std::size_t>(config.burnin_fraction * config.n_pi);
  sc.n_samples = config.n_pi - sc.n_burnin;
  sc.leapfrog_steps = config.leapfrog_steps;
  sc.seed = seed;
  const ChainRun run = hmcmc_chain(target, sc, x0);
  const Matrix samples = run.samples();
  const std::size_t stride = thinning_stride(samples.rows(), ess_min(samples));
  Matrix thinned(samples.rows() / stride, samples.cols());
  for (Eigen::Index i = 0; i < thinned.rows(); ++i) thinned.row(i) = samples.row(i * stride);
  const EmFit fit = fit_gmm(thinned, EmConfig::for_dimension(model->dimension()), seed ^ 0x9e3779b97f4a7c15ULL);
  return estimate_ch(target, fit.mixture, config.m_pi, seed + 0x51ed27ULL);
}

}  // namespace astpa
