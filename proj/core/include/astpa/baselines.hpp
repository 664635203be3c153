#pragma once

#include "astpa/density.hpp"
#include "astpa/limit_state.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace astpa {

struct CrudeMcResult {
  double p = 0.0;
  /// sqrt((1 - p) / (n p)); infinite when no failure was observed.
  double cov = 0.0;
  std::size_t n = 0;
  std::size_t failures = 0;
};

/// Direct Monte Carlo with draws from the model's own sampler.
CrudeMcResult crude_mc(const LimitStateProblem& problem, const DensityModel& model, std::size_t n, std::uint64_t seed);
/// Monte Carlo over given samples (e.g. a thinned MCMC chain).
CrudeMcResult crude_mc_from_samples(const LimitStateProblem& problem, const Matrix& samples);

/// Working space of subset simulation: a density to run component-wise
/// Metropolis in, a map to the model space and a first-level sampler.
class SusSpace {
 public:
  virtual ~SusSpace() = default;
  virtual std::size_t dimension() const = 0;
  virtual double log_density(const Vector& v) const = 0;
  /// Log-density ratio for changing coordinate i of v to `value`.
  virtual double component_log_ratio(const Vector& v, std::size_t i, double value) const;
  virtual Vector to_model(const Vector& v) const { return v; }
  virtual bool has_direct_sampler() const = 0;
  virtual void draw(Rng& rng, Vector& out) const = 0;
};

/// Independent standard normals mapped to the model by `map` (Nataf-type models).
class StandardNormalSpace final : public SusSpace {
 public:
  StandardNormalSpace(std::size_t d, std::function<Vector(const Vector&)> map);
  std::size_t dimension() const override { return d_; }
  double log_density(const Vector& v) const override { return -0.5 * v.squaredNorm(); }
  double component_log_ratio(const Vector& v, std::size_t i, double value) const override;
  Vector to_model(const Vector& v) const override { return map_ ? map_(v) : v; }
  bool has_direct_sampler() const override { return true; }
  void draw(Rng& rng, Vector& out) const override;

 private:
  std::size_t d_;
  std::function<Vector(const Vector&)> map_;
};

/// Runs directly in the model's space.
class ModelSpace final : public SusSpace {
 public:
  explicit ModelSpace(DensityPtr model);
  std::size_t dimension() const override { return model_->dimension(); }
  double log_density(const Vector& v) const override { return model_->evaluate(v).value; }
  bool has_direct_sampler() const override { return model_->has_direct_sampler(); }
  void draw(Rng& rng, Vector& out) const override { model_->draw(rng, out); }

 private:
  DensityPtr model_;
};

struct SusConfig {
  std::size_t n_per_level = 1000;
  double p0 = 0.1;
  /// Uniform component proposal of this total width.
  double proposal_width = 2.0;
  std::size_t max_levels = 40;
  /// Abort when a level's acceptance falls below this.
  double min_acceptance = 0.01;
};

struct SusResult {
  double p = 0.0;
  std::size_t levels = 0;
  std::vector<double> thresholds;
  std::vector<double> acceptance;
  std::uint64_t model_calls = 0;
};

/// Subset simulation with component-wise Metropolis-Hastings. `first_level`
/// supplies level-0 samples when the space has no direct sampler.
SusResult subset_simulation(const LimitStateProblem& problem, const SusSpace& space, const SusConfig& config,
                            std::uint64_t seed, const std::optional<Matrix>& first_level = std::nullopt);

}  // namespace astpa
