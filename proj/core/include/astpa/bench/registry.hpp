#pragma once

#include "astpa/estimator.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace astpa::bench {

enum class EstimatorKind { kAstpaQnp, kAstpaHmc, kSus, kMc };

std::string to_string(EstimatorKind k);
/// Accepts astpa-qnp, astpa-hmc, sus, mc.
EstimatorKind parse_estimator(const std::string& s);

enum class SusSpaceKind { kStandardNormal, kModel };

/// Published figures for one problem (zero where none was reported).
struct Reference {
  double monte_carlo_p = 0.0;
  double qnp_p = 0.0;
  double hmc_p = 0.0;
};

struct BenchmarkSpec {
  std::string id;
  std::string description;
  std::function<ProblemSetup()> make;
  AstpaParams params;
  std::size_t n_total_qnp = 0;
  std::size_t n_total_hmc = 0;
  double burnin_fraction = 0.15;
  double m_fraction = 0.3;
  std::size_t adam_iterations = 500;
  bool diagonal = false;
  double curvature_threshold = 10.0;
  /// Model lacks its normalizing constant; C_pi is estimated once per run.
  bool unnormalized = false;
  CPiConfig c_pi;
  std::size_t sus_n = 1000;
  SusSpaceKind sus_space = SusSpaceKind::kModel;
  /// Maps standard normals to the model (Nataf-type models only).
  std::function<Vector(const Vector&)> from_standard_normal;
  std::size_t mc_n = 1000000;
  Reference reference;
};

const std::vector<BenchmarkSpec>& registry();
/// Throws InvalidInput for unknown ids.
const BenchmarkSpec& find_benchmark(const std::string& id);

/// Directory holding data fixtures: $ASTPA_DATA_DIR or the build-time default.
std::string data_dir();

}  // namespace astpa::bench
