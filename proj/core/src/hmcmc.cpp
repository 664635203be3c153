#include "astpa/hmcmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace astpa {

LeapfrogResult leapfrog(const SamplingTarget& target, const Vector& x, const Vector& z, const PointEval& start,
                        double eps, int steps, const MassMatrix& mass) {
  if (steps < 1) throw InvalidInput("leapfrog: need at least one step");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidInput("leapfrog: step size must be positive");
  LeapfrogResult r;
  r.x = x;
  r.z = z + 0.5 * eps * start.grad;
  for (int l = 0; l < steps; ++l) {
    r.x += eps * mass.apply_inverse(r.z);
    r.eval = target.evaluate(r.x);
    ++r.gradient_calls;
    if (!r.eval.in_support()) r.left_support = true;
    r.z += (l + 1 < steps ? eps : 0.5 * eps) * r.eval.grad;
  }
  return r;
}

DualAveraging::DualAveraging(double initial_step, double target_accept, double gamma, double t0, double kappa)
    : delta_(target_accept), gamma_(gamma), t0_(t0), kappa_(kappa) {
  if (!(initial_step > 0.0) || !std::isfinite(initial_step)) throw InvalidInput("DualAveraging: bad initial step");
  mu_ = std::log(10.0 * initial_step);
}

double DualAveraging::update(double accept_prob) {
  ++m_;
  const double m = static_cast<double>(m_);
  const double eta = 1.0 / (m + t0_);
  h_bar_ = (1.0 - eta) * h_bar_ + eta * (delta_ - accept_prob);
  const double log_eps = mu_ - std::sqrt(m) / gamma_ * h_bar_;
  const double w = std::pow(m, -kappa_);
  log_eps_bar_ = w * log_eps + (1.0 - w) * log_eps_bar_;
  return std::exp(log_eps);
}

double DualAveraging::final_step() const { return std::exp(log_eps_bar_); }

Matrix ChainRun::samples() const { return states.bottomRows(sample_count()); }

double ChainRun::acceptance_rate() const {
  if (sample_count() == 0) return 0.0;
  std::size_t n = 0;
  for (std::size_t i = burnin_iterations; i < accepted.size(); ++i) n += accepted[i];
  return static_cast<double>(n) / static_cast<double>(sample_count());
}

namespace detail {

HmcKernel::HmcKernel(const SamplingTarget& target, MassMatrix mass, int steps, double divergence_threshold)
    : target_(target), mass_(std::move(mass)), steps_(steps), divergence_threshold_(divergence_threshold) {
  if (mass_.dimension() != target.dimension()) throw InvalidInput("HmcKernel: mass matrix dimension mismatch");
}

Proposal HmcKernel::propose(const Vector& x, const PointEval& e, const Vector& z, double eps) const {
  LeapfrogResult lf = leapfrog(target_, x, z, e, eps, steps_, mass_);
  Proposal p;
  p.x = std::move(lf.x);
  p.eval = std::move(lf.eval);
  if (lf.left_support) {
    p.rejected_outright = true;
    return p;
  }
  const double h0 = -e.log_target + mass_.kinetic(z);
  const double h1 = -p.eval.log_target + mass_.kinetic(lf.z);
  const double dh = h1 - h0;
  if (!std::isfinite(dh) || std::abs(dh) > divergence_threshold_) {
    p.rejected_outright = true;
    p.divergent = true;
    return p;
  }
  p.log_accept_ratio = -dh;
  return p;
}

namespace {

double acceptance_probability(const Proposal& p) {
  if (p.rejected_outright || std::isnan(p.log_accept_ratio)) return 0.0;
  return p.log_accept_ratio >= 0.0 ? 1.0 : std::exp(p.log_accept_ratio);
}

}  // namespace

ChainRun drive_chain(const SamplingTarget& target, const SamplerConfig& config, const Vector& x0,
                     std::optional<PointEval> start, Kernel& burnin, const KernelFactory& make_sampling) {
  const std::size_t d = target.dimension();
  require_dimension(x0, d, "chain start");
  require_finite(x0, "chain start");
  if (config.leapfrog_steps < 1) throw InvalidInput("chain: leapfrog_steps must be >= 1");
  if (config.n_samples == 0) throw InvalidInput("chain: n_samples must be positive");
  const std::size_t steps = static_cast<std::size_t>(config.leapfrog_steps);

  ChainRun run;
  Rng rng(config.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  Vector x = x0;
  PointEval e;
  if (start) {
    e = *start;
  } else {
    e = target.evaluate(x);
    ++run.target_calls;
  }
  if (!e.in_support()) throw InvalidInput("chain: start point outside the support");

  double eps = config.step_size;
  if (!(eps > 0.0)) {
    auto [found, trials] = find_initial_step(burnin, x, e, config.initial_search_step, rng);
    eps = found;
    run.search_calls = trials * steps;
    run.target_calls += run.search_calls;
  }
  const std::size_t burn_iters =
      config.n_burnin > run.search_calls ? (config.n_burnin - run.search_calls) / steps : 0;
  const std::size_t total = burn_iters + config.n_samples;
  const std::size_t adapt_iters = config.adapt ? 2 * burn_iters : 0;
  run.burnin_iterations = burn_iters;

  run.states.resize(total, d);
  run.log_target.reserve(total);
  run.log_base.reserve(total);
  run.g.reserve(total);
  run.accept_prob.reserve(total);
  run.accepted.reserve(total);

  DualAveraging da(eps, config.target_accept);
  std::unique_ptr<Kernel> sampling;
  Kernel* kernel = &burnin;
  std::size_t rejections = 0;

  for (std::size_t it = 0; it < total; ++it) {
    if (it == burn_iters && make_sampling) {
      const bool restart = burnin.dynamics_changed();
      sampling = make_sampling();
      kernel = sampling.get();
      if (restart && it < adapt_iters) {
        eps = 1.0;
        da = DualAveraging(eps, config.target_accept);
      }
    }
    const Vector z = kernel->draw_momentum(rng);
    Proposal p = kernel->propose(x, e, z, eps);
    run.target_calls += steps;
    if (p.divergent) ++run.divergences;
    const double alpha = acceptance_probability(p);
    const bool accept = unif(rng) < alpha;
    kernel->observe(x, e, p, alpha);
    if (accept) {
      x = std::move(p.x);
      e = std::move(p.eval);
      rejections = 0;
    } else {
      run.longest_rejection_run = std::max(run.longest_rejection_run, ++rejections);
    }
    run.states.row(it) = x.transpose();
    run.log_target.push_back(e.log_target);
    run.log_base.push_back(e.log_base);
    run.g.push_back(e.g);
    run.accept_prob.push_back(alpha);
    run.accepted.push_back(accept ? 1 : 0);
    if (it < adapt_iters) {
      eps = da.update(alpha);
      if (it + 1 == adapt_iters) eps = da.final_step();
    }
  }
  run.final_step_size = eps;
  return run;
}

}  // namespace detail

std::pair<double, std::size_t> find_initial_step(const detail::Kernel& kernel, const Vector& x, const PointEval& e,
                                                 double eps0, Rng& rng) {
  constexpr std::size_t kMaxTrials = 60;
  const Vector z = kernel.draw_momentum(rng);
  auto accept = [&](double eps) {
    const detail::Proposal p = kernel.propose(x, e, z, eps);
    if (p.rejected_outright || std::isnan(p.log_accept_ratio)) return 0.0;
    return p.log_accept_ratio >= 0.0 ? 1.0 : std::exp(p.log_accept_ratio);
  };
  double eps = eps0;
  double a = accept(eps);
  std::size_t trials = 1;
  const double dir = a > 0.5 ? 2.0 : 0.5;
  while (trials < kMaxTrials) {
    if (dir > 1.0 ? !(a > 0.5) : !(a < 0.5)) break;
    eps *= dir;
    a = accept(eps);
    ++trials;
  }
  return {eps, trials};
}

ChainRun hmcmc_chain(const SamplingTarget& target, const SamplerConfig& config, const Vector& x0,
                     std::optional<PointEval> start, std::optional<MassMatrix> mass) {
  detail::HmcKernel kernel(target, mass ? *mass : MassMatrix::identity(target.dimension()), config.leapfrog_steps,
                           config.divergence_threshold);
  ChainRun run = detail::drive_chain(target, config, x0, std::move(start), kernel, nullptr);
  run.mass_fallback = kernel.mass().fell_back();
  return run;
}

}  // namespace astpa
