#pragma once

#include "astpa/density.hpp"
#include "astpa/limit_state.hpp"
#include "astpa/transforms.hpp"

#include <limits>
#include <memory>

namespace astpa {

/// One evaluation of a sampling target. `log_base` is the original (possibly
/// unnormalized) log-density at the point and `g` the limit-state value; for
/// targets without a limit state `g` is NaN.
struct PointEval {
  double log_target = 0.0;
  Vector grad;
  double log_base = 0.0;
  double g = std::numeric_limits<double>::quiet_NaN();

  bool in_support() const { return log_target > -std::numeric_limits<double>::infinity(); }
};

/// Anything the samplers can run on: a log-density and its gradient.
class SamplingTarget {
 public:
  virtual ~SamplingTarget() = default;
  virtual std::size_t dimension() const = 0;
  virtual PointEval evaluate(const Vector& x) const = 0;
  /// Constant kept out of log_target so samplers never see it; added back
  /// wherever the target's normalization matters.
  virtual double log_constant() const { return 0.0; }
};

/// Wraps a DensityModel; log_base == log_target.
class DensityTarget final : public SamplingTarget {
 public:
  explicit DensityTarget(DensityPtr model);
  std::size_t dimension() const override { return model_->dimension(); }
  PointEval evaluate(const Vector& x) const override;
  const DensityModel& model() const { return *model_; }

 private:
  DensityPtr model_;
};

struct AstpaParams {
  double sigma = 0.1;
  double q = 20.0;
  /// Probability mass of the logistic likelihood on g >= 0.
  double percentile = 0.1;
};

/// mu_g = -(sqrt(3)/pi) sigma ln(p / (1 - p)).
double likelihood_shift(double sigma, double percentile = 0.1);

struct ScalingChoice {
  double g_c = 1.0;
  /// g at the mean was <= 0: the mean already lies in the rare-event domain.
  bool mean_in_failure = false;
};

/// g_c = g(mu) / q when g(mu) > 20 or 0 < g(mu) < 10, else 1.
ScalingChoice compute_gc(double g_at_mean, double q);

/// log h(y) = log pi_Y(y) + log l(g(T(y))) with the logistic likelihood
/// l(g) = 1 / (1 + exp((g / g_c + mu_g) / ((sqrt(3)/pi) sigma))).
/// `spec` composes the target with a support transform; g is always
/// evaluated in the original space.
class AstpaTarget final : public SamplingTarget {
 public:
  AstpaTarget(DensityPtr model, std::shared_ptr<const LimitStateProblem> problem, const AstpaParams& params,
              double g_c, BoundSpec spec = {}, double log_scale = 0.0);

  std::size_t dimension() const override { return model_->dimension(); }
  /// One model call.
  PointEval evaluate(const Vector& y) const override;
  double log_constant() const override { return log_scale_; }
  /// Combines a limit-state value already computed at T(y); no model call.
  PointEval evaluate_with(const Vector& y, const LimitStateValue& at_x) const;

  double log_likelihood(double g) const;
  double dlog_likelihood(double g) const;
  /// Argument of the logistic CDF, (g / g_c + mu_g) / ((sqrt(3)/pi) sigma).
  double logistic_argument(double g) const;

  double g_c() const { return g_c_; }
  double mu_g() const { return mu_g_; }
  const AstpaParams& params() const { return params_; }
  const BoundSpec& spec() const { return spec_; }
  const DensityModel& sampling_model() const { return *model_; }
  const LimitStateProblem& problem() const { return *problem_; }
  Vector to_original(const Vector& y) const;

 private:
  DensityPtr model_;
  std::shared_ptr<const LimitStateProblem> problem_;
  AstpaParams params_;
  double g_c_;
  BoundSpec spec_;
  double log_scale_;
  double mu_g_;
  double width_;
};

}  // namespace astpa
