#pragma once

#include "astpa/mass_matrix.hpp"
#include "astpa/target.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace astpa {

struct LeapfrogResult {
  Vector x;
  Vector z;
  PointEval eval;
  /// A point along the trajectory fell outside the support.
  bool left_support = false;
  int gradient_calls = 0;
};

/// L steps of half-kick / drift / half-kick with mass matrix M. `start` must
/// be the evaluation at x; each step costs one target evaluation.
LeapfrogResult leapfrog(const SamplingTarget& target, const Vector& x, const Vector& z, const PointEval& start,
                        double eps, int steps, const MassMatrix& mass);

/// Nesterov dual averaging of log(eps) towards a target acceptance rate.
class DualAveraging {
 public:
  explicit DualAveraging(double initial_step, double target_accept = 0.65, double gamma = 0.05, double t0 = 10.0,
                         double kappa = 0.75);

  /// Feeds one acceptance probability; returns the step size to use next.
  double update(double accept_prob);
  /// Averaged step size, used once adaptation stops.
  double final_step() const;
  std::size_t iterations() const { return m_; }

 private:
  double mu_;
  double delta_;
  double gamma_;
  double t0_;
  double kappa_;
  std::size_t m_ = 0;
  double h_bar_ = 0.0;
  double log_eps_bar_ = 0.0;
};

struct SamplerConfig {
  /// Burn-in budget in target evaluations; the initial step-size search is
  /// charged to it.
  std::size_t n_burnin = 0;
  /// Post-burn-in iterations.
  std::size_t n_samples = 1000;
  int leapfrog_steps = 1;
  /// <= 0 selects the step size by search plus dual averaging.
  double step_size = 0.0;
  bool adapt = true;
  double target_accept = 0.65;
  double initial_search_step = 0.1;
  /// |Delta H| above this is a divergence and is rejected.
  double divergence_threshold = 1000.0;
  std::uint64_t seed = 0;
};

struct ChainRun {
  /// One row per MCMC iteration (burn-in first); the start point is not included.
  Matrix states;
  std::vector<double> log_target;
  std::vector<double> log_base;
  std::vector<double> g;
  std::vector<double> accept_prob;
  std::vector<std::uint8_t> accepted;
  std::size_t burnin_iterations = 0;
  std::size_t search_calls = 0;
  /// Target evaluations made by the sampler, including the start point when
  /// it was not supplied.
  std::uint64_t target_calls = 0;
  double final_step_size = 0.0;
  std::size_t divergences = 0;
  std::size_t longest_rejection_run = 0;
  bool mass_fallback = false;

  // Quasi-Newton burn-in diagnostics (zero for plain HMC).
  std::size_t bfgs_updates = 0;
  std::size_t bfgs_skips = 0;
  std::size_t bfgs_reverts = 0;
  /// Learned inverse Hessian; d x 1 in diagonal mode.
  std::optional<Matrix> inverse_hessian;

  std::size_t iterations() const { return static_cast<std::size_t>(states.rows()); }
  std::size_t sample_count() const { return iterations() - burnin_iterations; }
  /// Post-burn-in block of states.
  Matrix samples() const;
  double acceptance_rate() const;
};

namespace detail {

struct Proposal {
  Vector x;
  PointEval eval;
  double log_accept_ratio = 0.0;
  bool rejected_outright = false;  // left the support or diverged
  bool divergent = false;
};

/// A transition kernel used by the shared chain driver.
class Kernel {
 public:
  virtual ~Kernel() = default;
  virtual Vector draw_momentum(Rng& rng) const = 0;
  virtual Proposal propose(const Vector& x, const PointEval& e, const Vector& z, double eps) const = 0;
  /// Called after each accept/reject decision (not during step-size search).
  virtual void observe(const Vector&, const PointEval&, const Proposal&, double) {}
  /// True if the kernel learned something that changes the dynamics, so the
  /// sampling phase should restart step-size adaptation.
  virtual bool dynamics_changed() const { return false; }
};

using KernelFactory = std::function<std::unique_ptr<Kernel>()>;

class HmcKernel final : public Kernel {
 public:
  HmcKernel(const SamplingTarget& target, MassMatrix mass, int steps, double divergence_threshold);
  Vector draw_momentum(Rng& rng) const override { return mass_.sample_momentum(rng); }
  Proposal propose(const Vector& x, const PointEval& e, const Vector& z, double eps) const override;
  const MassMatrix& mass() const { return mass_; }

 private:
  const SamplingTarget& target_;
  MassMatrix mass_;
  int steps_;
  double divergence_threshold_;
};

/// Runs burn-in with `burnin`, then switches to the kernel built by
/// `make_sampling` (when given) for the remaining iterations.
ChainRun drive_chain(const SamplingTarget& target, const SamplerConfig& config, const Vector& x0,
                     std::optional<PointEval> start, Kernel& burnin, const KernelFactory& make_sampling);

}  // namespace detail

/// Doubles or halves eps until one-step acceptance crosses 0.5. Returns the
/// step size and the number of trial proposals (each costs L evaluations).
std::pair<double, std::size_t> find_initial_step(const detail::Kernel& kernel, const Vector& x, const PointEval& e,
                                                 double eps0, Rng& rng);

ChainRun hmcmc_chain(const SamplingTarget& target, const SamplerConfig& config, const Vector& x0,
                     std::optional<PointEval> start = std::nullopt, std::optional<MassMatrix> mass = std::nullopt);

}  // namespace astpa
