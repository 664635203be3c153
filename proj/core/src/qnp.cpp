#include "astpa/qnp.hpp"

#include <cmath>
#include <limits>

namespace astpa {

BfgsState BfgsState::identity(std::size_t d, bool diagonal, double curvature_threshold) {
  if (d == 0) throw InvalidInput("BfgsState: zero dimension");
  return diagonal ? diagonal_of(Vector::Ones(d), curvature_threshold) : full(Matrix::Identity(d, d), curvature_threshold);
}

BfgsState BfgsState::full(Matrix w, double curvature_threshold) {
  if (w.rows() == 0 || w.rows() != w.cols() || !w.allFinite()) throw InvalidInput("BfgsState: bad matrix");
  if (Eigen::LLT<Matrix>(w).info() != Eigen::Success) throw InvalidInput("BfgsState: W not positive definite");
  BfgsState s;
  s.w_ = std::move(w);
  s.threshold_ = curvature_threshold;
  return s;
}

BfgsState BfgsState::diagonal_of(Vector w, double curvature_threshold) {
  if (w.size() == 0 || !(w.array() > 0.0).all() || !w.allFinite()) throw InvalidInput("BfgsState: bad diagonal");
  BfgsState s;
  s.diagonal_ = true;
  s.w_diag_ = std::move(w);
  s.threshold_ = curvature_threshold;
  return s;
}

Vector BfgsState::apply(const Vector& v) const { return diagonal_ ? Vector(w_diag_.cwiseProduct(v)) : Vector(w_ * v); }

Matrix BfgsState::dense() const { return diagonal_ ? Matrix(w_diag_.asDiagonal()) : w_; }

Matrix BfgsState::stored() const { return diagonal_ ? Matrix(w_diag_) : w_; }

bool bfgs_update(BfgsState& state, const Vector& s, const Vector& y) {
  require_dimension(s, state.dimension(), "bfgs_update");
  require_dimension(y, state.dimension(), "bfgs_update");
  const double sy = s.dot(y);
  if (!std::isfinite(sy) || !(sy > state.threshold_) || !s.allFinite() || !y.allFinite()) {
    ++state.skips;
    return false;
  }
  const double rho = 1.0 / sy;
  if (state.diagonal_) {
    // Diagonal of the full update evaluated at a diagonal W.
    const Vector wy = state.w_diag_.cwiseProduct(y);
    const double ywy = y.dot(wy);
    Vector next = state.w_diag_.array() - 2.0 * rho * s.array() * wy.array() +
                  (rho * rho * ywy + rho) * s.array().square();
    if (!(next.array() > 0.0).all() || !next.allFinite()) {
      ++state.skips;
      return false;
    }
    state.w_diag_ = std::move(next);
  } else {
    const Vector wy = state.w_ * y;
    const double ywy = y.dot(wy);
    Matrix next = state.w_;
    next.noalias() -= rho * (s * wy.transpose() + wy * s.transpose());
    next.noalias() += (rho * rho * ywy + rho) * (s * s.transpose());
    next = 0.5 * (next + next.transpose()).eval();
    // Exact arithmetic keeps W positive definite; rounding does not once W is
    // nearly singular, so the factorization and its condition estimate decide.
    if (!next.allFinite()) {
      ++state.skips;
      return false;
    }
    const Eigen::LLT<Matrix> llt(next);
    if (llt.info() != Eigen::Success || !(llt.rcond() > 1e-12)) {
      ++state.skips;
      return false;
    }
    state.w_ = std::move(next);
  }
  ++state.updates;
  return true;
}

BurnInStep leapfrog_burnin(const SamplingTarget& target, const Vector& x, const Vector& z, const PointEval& start,
                           double eps, const BfgsState& b, int steps, const MassMatrix* mass) {
  if (steps < 1) throw InvalidInput("leapfrog_burnin: need at least one step");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidInput("leapfrog_burnin: step size must be positive");
  if (b.dimension() != target.dimension()) throw InvalidInput("leapfrog_burnin: preconditioner dimension mismatch");
  BurnInStep r;
  r.x = x;
  r.z = z + 0.5 * eps * b.apply(start.grad);
  for (int l = 0; l < steps; ++l) {
    r.x += eps * b.apply(mass ? mass->apply_inverse(r.z) : r.z);
    r.eval = target.evaluate(r.x);
    if (!r.eval.in_support()) r.left_support = true;
    r.z += (l + 1 < steps ? eps : 0.5 * eps) * b.apply(r.eval.grad);
  }
  return r;
}

namespace {

class QnpBurnInKernel final : public detail::Kernel {
 public:
  QnpBurnInKernel(const SamplingTarget& target, const QnpConfig& config)
      : target_(target),
        config_(config),
        w_(BfgsState::identity(target.dimension(), config.diagonal, config.curvature_threshold)) {}

  Vector draw_momentum(Rng& rng) const override {
    std::normal_distribution<double> n01;
    Vector z(target_.dimension());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = n01(rng);
    return z;
  }

  detail::Proposal propose(const Vector& x, const PointEval& e, const Vector& z, double eps) const override {
    BurnInStep step = leapfrog_burnin(target_, x, z, e, eps, w_, config_.sampler.leapfrog_steps);
    detail::Proposal p;
    p.x = std::move(step.x);
    p.eval = std::move(step.eval);
    if (step.left_support) {
      p.rejected_outright = true;
      return p;
    }
    const double dh = (-p.eval.log_target + 0.5 * step.z.dot(step.z)) - (-e.log_target + 0.5 * z.dot(z));
    if (!std::isfinite(dh) || std::abs(dh) > config_.sampler.divergence_threshold) {
      p.rejected_outright = true;
      p.divergent = true;
      return p;
    }
    p.log_accept_ratio = -dh;
    return p;
  }

  void observe(const Vector& x, const PointEval& e, const detail::Proposal& p, double alpha) override {
    if (!p.eval.in_support()) return;
    // s and y come from the proposal whether or not it was accepted.
    const Vector s = p.x - x;
    const Vector y = e.grad - p.eval.grad;
    if (alpha < config_.revert_below) {
      if (s.dot(y) > w_.curvature_threshold()) ++reverts_;
      return;
    }
    bfgs_update(w_, s, y);
  }

  bool dynamics_changed() const override { return w_.updates > 0; }

  const BfgsState& state() const { return w_; }
  std::size_t reverts() const { return reverts_; }

 private:
  const SamplingTarget& target_;
  QnpConfig config_;
  BfgsState w_;
  std::size_t reverts_ = 0;
};

}  // namespace

ChainRun qnp_chain(const SamplingTarget& target, const QnpConfig& config, const Vector& x0,
                   std::optional<PointEval> start) {
  QnpBurnInKernel burnin(target, config);
  bool fallback = false;
  auto make_sampling = [&]() -> std::unique_ptr<detail::Kernel> {
    const BfgsState& w = burnin.state();
    MassMatrix mass = w.is_diagonal() ? MassMatrix::from_inverse_diagonal(w.stored().col(0))
                                      : MassMatrix::from_inverse(w.dense());
    fallback = mass.fell_back();
    return std::make_unique<detail::HmcKernel>(target, std::move(mass), config.sampler.leapfrog_steps,
                                               config.sampler.divergence_threshold);
  };
  ChainRun run = detail::drive_chain(target, config.sampler, x0, std::move(start), burnin, make_sampling);
  run.mass_fallback = fallback;
  run.bfgs_updates = burnin.state().updates;
  run.bfgs_skips = burnin.state().skips;
  run.bfgs_reverts = burnin.reverts();
  run.inverse_hessian = burnin.state().stored();
  return run;
}

double mala_acceptance(const SamplingTarget& target, const Vector& x, const Vector& x_new, double eps, const Matrix& a) {
  const std::size_t d = target.dimension();
  require_dimension(x, d, "mala_acceptance");
  require_dimension(x_new, d, "mala_acceptance");
  if (static_cast<std::size_t>(a.rows()) != d || a.rows() != a.cols()) throw InvalidInput("mala_acceptance: bad A");
  Eigen::LLT<Matrix> llt(a);
  if (!a.isApprox(a.transpose(), 1e-10) || llt.info() != Eigen::Success) {
    throw InvalidInput("mala_acceptance: A is not symmetric positive definite");
  }
  const PointEval e0 = target.evaluate(x);
  const PointEval e1 = target.evaluate(x_new);
  if (!e1.in_support()) return 0.0;
  const double h = 0.5 * eps * eps;
  const Vector fwd = x_new - x - h * (a * e0.grad);
  const Vector rev = x - x_new - h * (a * e1.grad);
  const double log_q_fwd = -0.5 / (eps * eps) * fwd.dot(llt.solve(fwd));
  const double log_q_rev = -0.5 / (eps * eps) * rev.dot(llt.solve(rev));
  const double log_ratio = e1.log_target - e0.log_target + log_q_rev - log_q_fwd;
  if (std::isnan(log_ratio)) return 0.0;
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

MalaEquivalence verify_mala_equivalence(const SamplingTarget& target, const Vector& x, std::uint64_t seed, double eps,
                                        const Matrix& w, const Matrix& m, QnpPhase phase) {
  const std::size_t d = target.dimension();
  const MassMatrix mass = MassMatrix::full(m);
  Rng rng(seed);
  std::normal_distribution<double> n01;
  Vector zs(d);
  for (std::size_t i = 0; i < d; ++i) zs[i] = n01(rng);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);

  const Eigen::LLT<Matrix> llt_m(m);
  const Matrix l_m = llt_m.matrixL();
  const Vector z = l_m * zs;
  const Matrix m_inv = llt_m.solve(Matrix::Identity(d, d));
  const PointEval e = target.evaluate(x);

  Vector x_hmc, z_end;
  PointEval e_end;
  Matrix a, noise;
  if (phase == QnpPhase::kBurnIn) {
    const BfgsState b = BfgsState::full(w);
    BurnInStep step = leapfrog_burnin(target, x, z, e, eps, b, 1, &mass);
    x_hmc = std::move(step.x);
    z_end = std::move(step.z);
    e_end = std::move(step.eval);
    a = w * m_inv * w;
    noise = w * m_inv * l_m;
  } else {
    LeapfrogResult lf = leapfrog(target, x, z, e, eps, 1, mass);
    x_hmc = std::move(lf.x);
    z_end = std::move(lf.z);
    e_end = std::move(lf.eval);
    a = m_inv;
    noise = m_inv * l_m;
  }
  a = 0.5 * (a + a.transpose()).eval();

  const double log_hmc = e_end.log_target - 0.5 * z_end.dot(m_inv * z_end) - e.log_target + 0.5 * z.dot(m_inv * z);
  const double alpha_hmc = std::isnan(log_hmc) ? 0.0 : (log_hmc >= 0.0 ? 1.0 : std::exp(log_hmc));

  const Vector x_mala = x + 0.5 * eps * eps * (a * e.grad) + eps * (noise * zs);
  const double alpha_mala = mala_acceptance(target, x, x_mala, eps, a);

  MalaEquivalence out;
  out.delta_proposal = (x_mala - x_hmc).lpNorm<Eigen::Infinity>();
  out.delta_acceptance = std::abs(alpha_mala - alpha_hmc);
  out.same_decision = (u < alpha_mala) == (u < alpha_hmc);
  return out;
}

}  // namespace astpa
