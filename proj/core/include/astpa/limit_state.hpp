#pragma once

#include "astpa/types.hpp"

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace astpa {

enum class LimitStateFamily {
  kQuadraticGumbel,
  kLinearRosenbrock,
  kHyperspherical,
  kOcticLognormal,
  kRingQuadratic,
  kLinear,
};

std::string to_string(LimitStateFamily f);

struct LimitStateValue {
  double g = 0.0;
  Vector grad;
};

/// g(x) with analytic gradient; failure is g <= 0.
class LimitStateFunction {
 public:
  virtual ~LimitStateFunction() = default;
  virtual LimitStateFamily family() const = 0;
  virtual std::size_t dimension() const = 0;
  virtual LimitStateValue evaluate(const Vector& x) const = 0;
  /// g only. Defaults to evaluate().g; overridden where that is much cheaper.
  virtual double value(const Vector& x) const { return evaluate(x).g; }
};

using LimitStatePtr = std::shared_ptr<const LimitStateFunction>;

/// g = lambda - sum(x)/sqrt(d) + 2.5 (x_1 - sum_{j=2..gamma} x_j)^2
class QuadraticGumbelLimitState final : public LimitStateFunction {
 public:
  QuadraticGumbelLimitState(std::size_t d, double lambda, std::size_t gamma);
  LimitStateFamily family() const override { return LimitStateFamily::kQuadraticGumbel; }
  std::size_t dimension() const override { return d_; }
  LimitStateValue evaluate(const Vector& x) const override;

 private:
  std::size_t d_;
  double lambda_;
  std::size_t gamma_;
};

/// g = threshold - 3 x_1 - sum_{i>=2} x_i
class LinearRosenbrockLimitState final : public LimitStateFunction {
 public:
  explicit LinearRosenbrockLimitState(std::size_t d, double threshold = 250.0);
  LimitStateFamily family() const override { return LimitStateFamily::kLinearRosenbrock; }
  std::size_t dimension() const override { return d_; }
  LimitStateValue evaluate(const Vector& x) const override;
  double value(const Vector& x) const override;

 private:
  std::size_t d_;
  double threshold_;
};

/// g = sum_{i<d} x_i^2 + (x_d + shift)^2 - r^2
class HypersphericalLimitState final : public LimitStateFunction {
 public:
  HypersphericalLimitState(std::size_t d, double radius, double shift = 6.0);
  LimitStateFamily family() const override { return LimitStateFamily::kHyperspherical; }
  std::size_t dimension() const override { return d_; }
  LimitStateValue evaluate(const Vector& x) const override;
  double value(const Vector& x) const override;

 private:
  std::size_t d_;
  double radius_;
  double shift_;
};

/// g = y0 - sum(x)/sqrt(d) + 2.5 (x_1 - sum_{2..10} x_i)^2
///     + (x_11 - sum_{12..14} x_i)^4 + (x_15 - x_16 - x_17)^8
class OcticLimitState final : public LimitStateFunction {
 public:
  OcticLimitState(std::size_t d, double y0);
  LimitStateFamily family() const override { return LimitStateFamily::kOcticLognormal; }
  std::size_t dimension() const override { return d_; }
  LimitStateValue evaluate(const Vector& x) const override;

 private:
  std::size_t d_;
  double y0_;
};

/// g = r^2 - (x_1 - 2)^2 - sum_{i>=2} x_i^2
class RingQuadraticLimitState final : public LimitStateFunction {
 public:
  RingQuadraticLimitState(std::size_t d, double radius);
  LimitStateFamily family() const override { return LimitStateFamily::kRingQuadratic; }
  std::size_t dimension() const override { return d_; }
  LimitStateValue evaluate(const Vector& x) const override;

 private:
  std::size_t d_;
  double radius_;
};

/// g = b - a^T x
class LinearLimitState final : public LimitStateFunction {
 public:
  LinearLimitState(Vector a, double b);
  LimitStateFamily family() const override { return LimitStateFamily::kLinear; }
  std::size_t dimension() const override { return a_.size(); }
  LimitStateValue evaluate(const Vector& x) const override;
  double value(const Vector& x) const override;

 private:
  Vector a_;
  double b_;
};

inline int indicator(double g) { return g <= 0.0 ? 1 : 0; }

/// A limit-state function bound to a model-call counter. Every evaluation of
/// g (with or without gradient) is one model call. Thread-safe.
class LimitStateProblem {
 public:
  explicit LimitStateProblem(LimitStatePtr fn);
  LimitStateProblem(const LimitStateProblem& other);

  std::size_t dimension() const { return fn_->dimension(); }
  LimitStateFamily family() const { return fn_->family(); }
  const LimitStateFunction& function() const { return *fn_; }

  LimitStateValue evaluate(const Vector& x) const;
  double value(const Vector& x) const;
  /// I_F(x). Reuses the most recent evaluation when x matches it exactly.
  int indicator(const Vector& x) const;

  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }
  void reset_calls() { calls_.store(0, std::memory_order_relaxed); }

 private:
  void remember(const Vector& x, double g) const;

  LimitStatePtr fn_;
  mutable std::atomic<std::uint64_t> calls_{0};
  mutable std::mutex cache_mutex_;
  mutable Vector last_x_;
  mutable double last_g_ = 0.0;
};

}  // namespace astpa
