#include "astpa/discovery.hpp"

#include <cmath>

namespace astpa {

DiscoveryResult discover(const SamplingTarget& target, const Vector& x0, const AdamConfig& config,
                         std::optional<PointEval> start) {
  if (!(config.learning_rate > 0.0) || config.max_iterations < 1) {
    throw InvalidInput("discover: learning rate must be positive and max_iterations >= 1");
  }
  const std::size_t d = target.dimension();
  require_dimension(x0, d, "discover");
  require_finite(x0, "discover");

  DiscoveryResult r;
  std::vector<Vector> trace;
  Vector x = x0;
  Vector m = Vector::Zero(d);
  Vector v = Vector::Zero(d);
  double b1t = 1.0, b2t = 1.0;
  for (std::size_t k = 0; k < config.max_iterations; ++k) {
    PointEval e = (k == 0 && start) ? *start : target.evaluate(x);
    if (!e.in_support() || !std::isfinite(e.log_target) || !e.grad.allFinite()) {
      if (k == 0) throw InvalidInput("discover: objective is not finite at the start point");
      throw StageError("discovery", "objective became non-finite at iteration " + std::to_string(k));
    }
    trace.push_back(x);
    r.objective.push_back(-e.log_target);
    r.x = x;
    r.eval = e;
    if (k + 1 == config.max_iterations) break;
    // Gradient of the objective -log h.
    const Vector grad = -e.grad;
    m = config.beta1 * m + (1.0 - config.beta1) * grad;
    v = config.beta2 * v + (1.0 - config.beta2) * grad.cwiseProduct(grad);
    b1t *= config.beta1;
    b2t *= config.beta2;
    const Vector m_hat = m / (1.0 - b1t);
    const Vector v_hat = v / (1.0 - b2t);
    const Vector step = config.learning_rate * m_hat.cwiseQuotient((v_hat.cwiseSqrt().array() + config.epsilon).matrix());
    if (step.norm() < config.tolerance) {
      r.converged = true;
      break;
    }
    x -= step;
  }
  r.n_calls = trace.size();
  r.trace.resize(r.n_calls, d);
  for (std::size_t i = 0; i < r.n_calls; ++i) r.trace.row(i) = trace[i].transpose();
  return r;
}

PlacementVerdict placement_check(const AstpaTarget& target, const PointEval& at_end) {
  PlacementVerdict v;
  v.g = at_end.g;
  v.logistic_argument = target.logistic_argument(at_end.g);
  if (at_end.g <= 0.0 || std::abs(v.logistic_argument) <= 20.0) return v;
  v.verdict = Placement::kRelaxNeeded;
  v.suggested_sigma = target.params().sigma - 0.05;
  v.suggested_q = target.params().q * 2.0;
  return v;
}

}  // namespace astpa
