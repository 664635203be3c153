#pragma once

#include "astpa/density.hpp"

#include <vector>

namespace astpa {

struct Bound {
  enum class Kind { kUnbounded, kLower, kUpper, kInterval };
  Kind kind = Kind::kUnbounded;
  double lower = 0.0;
  double upper = 0.0;

  static Bound unbounded() { return {}; }
  static Bound lower_at(double a) { return {Kind::kLower, a, 0.0}; }
  static Bound upper_at(double b) { return {Kind::kUpper, 0.0, b}; }
  static Bound interval(double a, double b);
};

/// Per-coordinate support description and the bijection to R^d:
/// lower log(x - a), upper log(b - x), interval logit((x - a) / (b - a)).
class BoundSpec {
 public:
  BoundSpec() = default;
  explicit BoundSpec(std::vector<Bound> bounds);
  static BoundSpec uniform(std::size_t d, Bound b);

  bool empty() const { return bounds_.empty(); }
  std::size_t dimension() const { return bounds_.size(); }
  bool is_identity() const;
  const Bound& operator[](std::size_t i) const { return bounds_[i]; }

  /// Throws InvalidInput for points on or outside the boundary.
  Vector to_unbounded(const Vector& x) const;
  Vector to_bounded(const Vector& y) const;
  /// Diagonal of dx/dy.
  Vector jacobian_diagonal(const Vector& y) const;
  double log_abs_det_jacobian(const Vector& y) const;
  Vector grad_log_abs_det_jacobian(const Vector& y) const;

 private:
  std::vector<Bound> bounds_;
};

/// Density of y = T(x) for x ~ model: log pi(T^{-1}(y)) + log|det J|.
class PushforwardDensity final : public DensityModel {
 public:
  PushforwardDensity(BoundSpec spec, DensityPtr base);

  DensityFamily family() const override { return DensityFamily::kPushforward; }
  std::size_t dimension() const override { return base_->dimension(); }
  bool normalized() const override { return base_->normalized(); }
  bool has_direct_sampler() const override { return base_->has_direct_sampler(); }
  void draw(Rng& rng, Vector& out) const override;

  const BoundSpec& spec() const { return spec_; }
  const DensityModel& base() const { return *base_; }

 protected:
  LogDensity do_evaluate(const Vector& y) const override;

 private:
  BoundSpec spec_;
  DensityPtr base_;
};

/// Returns `model` itself for an identity spec, otherwise its pushforward.
DensityPtr pushforward_log_density(const BoundSpec& spec, DensityPtr model);

}  // namespace astpa
