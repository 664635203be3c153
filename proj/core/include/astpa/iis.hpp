#pragma once

#include "astpa/em.hpp"
#include "astpa/hmcmc.hpp"

#include <span>

namespace astpa {

enum class SplitRule { kAverage, kMinimum };

std::string to_string(SplitRule r);

/// Importance-sampling estimate of a normalizing constant, kept in log space.
struct NormalizingEstimate {
  double log_value = 0.0;
  double log_half1 = 0.0;
  double log_half2 = 0.0;
  SplitRule rule = SplitRule::kAverage;
  /// Var(C) / C^2 of the sample-mean estimator.
  double relative_variance = 0.0;
  std::size_t m = 0;
  /// Draws discarded for a non-finite ratio.
  std::size_t dropped = 0;

  double value() const { return std::exp(log_value); }
  double cov() const { return std::sqrt(relative_variance); }
};

/// Combines log ratios log(h(x_i) / Q(x_i)). The halves of the sample give two
/// estimates; when they agree within a factor of 3 the full-sample mean is
/// used, otherwise the smaller half estimate.
NormalizingEstimate combine_log_ratios(std::span<const double> log_ratios);

/// Draws m points from q and averages h / q. Each draw costs one evaluation of
/// `h` (a model call for an ASTPA target).
NormalizingEstimate estimate_ch(const SamplingTarget& h, const GaussianMixture& q, std::size_t m, std::uint64_t seed);

struct CPiConfig {
  std::size_t n_pi = 8000;
  std::size_t m_pi = 3000;
  double burnin_fraction = 0.1;
  int leapfrog_steps = 1;
};

/// Normalizing constant of an unnormalized density: HMC samples, a mixture
/// fit on the thinned chain, then importance sampling against the mixture.
NormalizingEstimate estimate_c_pi(DensityPtr model, const Vector& x0, const CPiConfig& config, std::uint64_t seed);

}  // namespace astpa
