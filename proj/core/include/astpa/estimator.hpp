#pragma once

#include "astpa/discovery.hpp"
#include "astpa/iis.hpp"
#include "astpa/qnp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace astpa {

/// Estimate of the failure probability under the shifted target,
/// E_h[I_F pi / h], from the post-burn-in chain.
struct ShiftedEstimate {
  double log_value = 0.0;
  /// Var / value^2, computed on the thinned chain.
  double relative_variance = 0.0;
  std::size_t n = 0;
  std::size_t n_thinned = 0;
  std::size_t stride = 0;
  double ess_min = 0.0;
  std::size_t failures = 0;

  double value() const { return std::exp(log_value); }
};

ShiftedEstimate shifted_estimate(const ChainRun& run);

/// sqrt(rv_p + rv_c + rv_p rv_c), with rv the relative variances of the two factors.
double analytical_cov(double relative_var_p_tilde, double relative_var_c_h);

enum class SamplerKind { kHmc, kQnp };

/// A reliability problem in its original space.
struct ProblemSetup {
  std::string name;
  DensityPtr model;
  LimitStatePtr limit_state;
  /// Support transform used for sampling; empty for unbounded models.
  BoundSpec spec;
  /// Point used for g_c and as the Adam start, in the original space.
  Vector mean;
  /// log C_pi for unnormalized models.
  std::optional<double> log_c_pi;
};

struct Budget {
  /// When > 0, N, N_BurnIn and M are derived from this after discovery.
  std::size_t n_total = 0;
  double burnin_fraction = 0.15;
  double m_fraction = 0.3;
  // Used when n_total == 0.
  std::size_t n = 0;
  std::size_t n_burnin = 0;
  std::size_t m = 0;
};

struct RunOptions {
  AstpaParams params;
  SamplerKind sampler = SamplerKind::kQnp;
  Budget budget;
  bool diagonal_mass = false;
  int leapfrog_steps = 1;
  double curvature_threshold = 10.0;
  double revert_below = 0.01;
  AdamConfig adam;
  std::optional<EmConfig> em;
  /// Added to log h; the estimate must not depend on it.
  double log_target_scale = 0.0;
  std::uint64_t seed = 0;
};

struct EstimateReport {
  double log_p = 0.0;
  double p = 0.0;
  double p_tilde = 0.0;
  double log_c_h = 0.0;
  std::optional<double> log_c_pi;
  SplitRule split_rule = SplitRule::kAverage;
  double relative_var_p_tilde = 0.0;
  double relative_var_c_h = 0.0;
  double analytical_cov = 0.0;

  // Model-call ledger; n_total == model_calls.
  std::size_t n_adam = 0;
  std::size_t n_burnin = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t n_total = 0;
  std::uint64_t model_calls = 0;

  double g_c = 1.0;
  double g_at_mean = 0.0;
  PlacementVerdict placement;
  bool adam_converged = false;
  double ess_min = 0.0;
  std::size_t stride = 0;
  std::size_t chain_failures = 0;
  double acceptance_rate = 0.0;
  double step_size = 0.0;
  std::size_t bfgs_updates = 0;
  std::size_t gmm_components = 0;
  std::vector<std::string> warnings;
};

/// p = p_tilde * C_h (/ C_pi), in log space. Appends a warning when p > 1.
double combine_log(double log_p_tilde, double log_c_h, std::optional<double> log_c_pi,
                   std::vector<std::string>* warnings = nullptr);

/// Full pipeline: g_c, discovery, sampling, shifted estimate, mixture fit and
/// importance sampling of C_h.
EstimateReport run_astpa(const ProblemSetup& setup, const RunOptions& options);

/// Deterministic seed derivation for sub-streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace astpa
