#pragma once

#include "astpa/bench/registry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace astpa::bench {

struct RunRequest {
  std::string problem;
  EstimatorKind estimator = EstimatorKind::kAstpaQnp;
  std::size_t reps = 100;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  // Overrides of the registry defaults.
  std::optional<double> sigma;
  std::optional<double> q;
  /// ASTPA: total budget; MC: sample count; SuS: samples per level.
  std::optional<std::size_t> n_total;
  std::optional<std::size_t> n;
  std::optional<std::size_t> n_burnin;
  std::optional<std::size_t> m;
  std::optional<bool> diagonal_mass;
};

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double p = 0.0;
  /// Analytical C.o.V (ASTPA) or crude-MC C.o.V; NaN for SuS.
  double cov = 0.0;
  std::uint64_t n_total = 0;
  std::uint64_t n_adam = 0;
  std::uint64_t n_burnin = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  double ess_min = 0.0;
  double acceptance_rate = 0.0;
  std::vector<std::string> warnings;

  bool operator==(const TrialRecord&) const = default;
};

struct TrialSummary {
  std::string problem;
  std::string estimator;
  std::uint64_t seed_base = 0;
  std::size_t reps = 0;
  std::size_t failed = 0;
  double sigma = 0.0;
  double q = 0.0;
  double mean_p = 0.0;
  /// Standard deviation (n-1) over mean, across successful trials.
  double sampling_cov = 0.0;
  double mean_analytical_cov = 0.0;
  double mean_n_total = 0.0;
  /// log C_pi shared by every trial (unnormalized models only).
  std::optional<double> log_c_pi;
  double reference_p = 0.0;
  std::vector<TrialRecord> trials;

  bool operator==(const TrialSummary&) const = default;
};

/// Runs `reps` independent trials with seeds seed + i. Failed trials are
/// recorded and excluded from the aggregates.
TrialSummary run_benchmark(const RunRequest& request);

/// ASTPA options for a registry problem with request overrides applied.
RunOptions astpa_options(const BenchmarkSpec& spec, const RunRequest& request, std::uint64_t seed);

/// One C_pi estimate for an unnormalized registry problem.
double estimate_log_c_pi(const BenchmarkSpec& spec, std::uint64_t seed);

}  // namespace astpa::bench
