#pragma once

#include "astpa/target.hpp"

#include <optional>
#include <vector>

namespace astpa {

struct AdamConfig {
  double learning_rate = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t max_iterations = 500;
  /// Stop once the L2 norm of an update falls below this.
  double tolerance = 1e-7;
};

struct DiscoveryResult {
  /// Last evaluated point and its evaluation (the sampler's start).
  Vector x;
  PointEval eval;
  /// Every evaluated point, in order; trace.rows() == n_calls.
  Matrix trace;
  /// -log h at each evaluated point.
  std::vector<double> objective;
  std::size_t n_calls = 0;
  bool converged = false;
};

/// Adam descent on -log h from x0. `start` may carry an evaluation at x0
/// computed earlier; the first iteration then makes no target call.
DiscoveryResult discover(const SamplingTarget& target, const Vector& x0, const AdamConfig& config = {},
                         std::optional<PointEval> start = std::nullopt);

enum class Placement { kOk, kRelaxNeeded };

struct PlacementVerdict {
  Placement verdict = Placement::kOk;
  double g = 0.0;
  double logistic_argument = 0.0;
  /// Only meaningful when relaxation is needed.
  double suggested_sigma = 0.0;
  double suggested_q = 0.0;
};

/// Flags an Adam end point that neither reached the rare-event domain nor
/// sits where the likelihood still has gradient (|z| <= 20).
PlacementVerdict placement_check(const AstpaTarget& target, const PointEval& at_end);

}  // namespace astpa
