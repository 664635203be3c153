#include "astpa/target.hpp"

#include "astpa/math.hpp"

#include <cmath>

namespace astpa {
namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kSqrt3OverPi = std::sqrt(3.0) / kPi;
}  // namespace

DensityTarget::DensityTarget(DensityPtr model) : model_(std::move(model)) {
  if (!model_) throw InvalidInput("DensityTarget: null model");
}

PointEval DensityTarget::evaluate(const Vector& x) const {
  LogDensity r = model_->evaluate(x);
  PointEval e;
  e.log_target = r.value;
  e.log_base = r.value;
  e.grad = std::move(r.grad);
  return e;
}

double likelihood_shift(double sigma, double percentile) {
  if (!(sigma > 0.0)) throw InvalidInput("likelihood_shift: sigma must be positive");
  if (!(percentile > 0.0 && percentile < 1.0)) throw InvalidInput("likelihood_shift: percentile outside (0, 1)");
  return -kSqrt3OverPi * sigma * std::log(percentile / (1.0 - percentile));
}

ScalingChoice compute_gc(double g_at_mean, double q) {
  if (!std::isfinite(g_at_mean)) throw InvalidInput("compute_gc: non-finite g at the mean");
  if (!(q > 0.0)) throw InvalidInput("compute_gc: q must be positive");
  ScalingChoice c;
  c.mean_in_failure = g_at_mean <= 0.0;
  if (g_at_mean > 20.0 || (g_at_mean > 0.0 && g_at_mean < 10.0)) c.g_c = g_at_mean / q;
  return c;
}

AstpaTarget::AstpaTarget(DensityPtr model, std::shared_ptr<const LimitStateProblem> problem, const AstpaParams& params,
                         double g_c, BoundSpec spec, double log_scale)
    : problem_(std::move(problem)), params_(params), g_c_(g_c), spec_(std::move(spec)), log_scale_(log_scale) {
  if (!model || !problem_) throw InvalidInput("AstpaTarget: null model or problem");
  if (model->dimension() != problem_->dimension()) throw InvalidInput("AstpaTarget: dimension mismatch");
  if (!(g_c > 0.0) || !std::isfinite(g_c)) throw InvalidInput("AstpaTarget: g_c must be positive");
  if (!std::isfinite(log_scale)) throw InvalidInput("AstpaTarget: non-finite scale");
  mu_g_ = likelihood_shift(params.sigma, params.percentile);
  width_ = kSqrt3OverPi * params.sigma;
  if (spec_.is_identity()) spec_ = BoundSpec();
  model_ = pushforward_log_density(spec_, std::move(model));
}

double AstpaTarget::logistic_argument(double g) const { return (g / g_c_ + mu_g_) / width_; }

double AstpaTarget::log_likelihood(double g) const { return -softplus(logistic_argument(g)); }

double AstpaTarget::dlog_likelihood(double g) const { return -sigmoid(logistic_argument(g)) / (g_c_ * width_); }

Vector AstpaTarget::to_original(const Vector& y) const { return spec_.empty() ? y : spec_.to_bounded(y); }

PointEval AstpaTarget::evaluate(const Vector& y) const {
  require_dimension(y, dimension(), "AstpaTarget");
  require_finite(y, "AstpaTarget");
  const Vector x = to_original(y);
  if (!x.allFinite()) {
    PointEval e;
    e.log_target = e.log_base = kNegInf;
    e.grad = Vector::Zero(y.size());
    return e;
  }
  return evaluate_with(y, problem_->evaluate(x));
}

PointEval AstpaTarget::evaluate_with(const Vector& y, const LimitStateValue& at_x) const {
  LogDensity base = model_->evaluate(y);
  PointEval e;
  e.g = at_x.g;
  e.log_base = base.value;
  if (!base.in_support() || !std::isfinite(at_x.g)) {
    e.log_target = kNegInf;
    e.grad = Vector::Zero(y.size());
    return e;
  }
  Vector grad_g = spec_.empty() ? at_x.grad : Vector(at_x.grad.cwiseProduct(spec_.jacobian_diagonal(y)));
  e.log_target = base.value + log_likelihood(at_x.g);
  e.grad = base.grad + dlog_likelihood(at_x.g) * grad_g;
  return e;
}

}  // namespace astpa
