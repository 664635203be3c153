#pragma once

#include "astpa/hmcmc.hpp"

namespace astpa {

/// Inverse-Hessian approximation W of U = -log h, full or diagonal.
class BfgsState {
 public:
  static BfgsState identity(std::size_t d, bool diagonal = false, double curvature_threshold = 10.0);
  static BfgsState full(Matrix w, double curvature_threshold = 10.0);
  static BfgsState diagonal_of(Vector w, double curvature_threshold = 10.0);

  std::size_t dimension() const { return diagonal_ ? w_diag_.size() : w_.rows(); }
  bool is_diagonal() const { return diagonal_; }
  double curvature_threshold() const { return threshold_; }
  void set_curvature_threshold(double c) { threshold_ = c; }

  Vector apply(const Vector& v) const;
  /// W as a dense matrix.
  Matrix dense() const;
  /// W as stored: d x d, or d x 1 in diagonal mode.
  Matrix stored() const;

  std::size_t updates = 0;
  std::size_t skips = 0;

 private:
  friend bool bfgs_update(BfgsState&, const Vector&, const Vector&);
  bool diagonal_ = false;
  double threshold_ = 10.0;
  Matrix w_;
  Vector w_diag_;
};

/// W' = (I - rho s y^T) W (I - rho y s^T) + rho s s^T with rho = 1 / s^T y,
/// applied only when s^T y exceeds the curvature threshold. In diagonal mode
/// only the diagonal of W' is kept. Returns true when W changed.
bool bfgs_update(BfgsState& state, const Vector& s, const Vector& y);

struct BurnInStep {
  Vector x;
  Vector z;
  PointEval eval;
  bool left_support = false;
};

/// Skew-symmetric preconditioned leapfrog: z += eps/2 B grad; x += eps B M^{-1} z;
/// z += eps/2 B grad(x'). B stays fixed over the trajectory. M defaults to I.
BurnInStep leapfrog_burnin(const SamplingTarget& target, const Vector& x, const Vector& z, const PointEval& start,
                           double eps, const BfgsState& b, int steps = 1, const MassMatrix* mass = nullptr);

struct QnpConfig {
  SamplerConfig sampler;
  double curvature_threshold = 10.0;
  bool diagonal = false;
  /// Updates made on iterations with acceptance probability below this are undone.
  double revert_below = 0.01;
};

ChainRun qnp_chain(const SamplingTarget& target, const QnpConfig& config, const Vector& x0,
                   std::optional<PointEval> start = std::nullopt);

/// Metropolis-adjusted Langevin acceptance probability for x -> x_new with
/// proposal N(x + eps^2/2 A grad, eps^2 A). Throws InvalidInput for non-SPD A.
double mala_acceptance(const SamplingTarget& target, const Vector& x, const Vector& x_new, double eps, const Matrix& a);

enum class QnpPhase { kBurnIn, kSampling };

struct MalaEquivalence {
  double delta_proposal = 0.0;
  double delta_acceptance = 0.0;
  bool same_decision = true;
};

/// Single-step QNp/HMC move against the equivalent preconditioned MALA move
/// under matched noise z = L_M z' (L_M the Cholesky factor of M) and a shared
/// uniform. Burn-in form uses A = W M^{-1} W, sampling form A = M^{-1}.
MalaEquivalence verify_mala_equivalence(const SamplingTarget& target, const Vector& x, std::uint64_t seed, double eps,
                                        const Matrix& w, const Matrix& m, QnpPhase phase);

}  // namespace astpa
