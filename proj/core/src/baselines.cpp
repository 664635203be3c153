#include "astpa/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace astpa {
namespace {

CrudeMcResult finish(std::size_t n, std::size_t failures) {
  CrudeMcResult r;
  r.n = n;
  r.failures = failures;
  r.p = static_cast<double>(failures) / static_cast<double>(n);
  r.cov = failures == 0 ? std::numeric_limits<double>::infinity() : std::sqrt((1.0 - r.p) / (static_cast<double>(n) * r.p));
  return r;
}

}  // namespace

CrudeMcResult crude_mc(const LimitStateProblem& problem, const DensityModel& model, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidInput("crude_mc: n must be positive");
  if (!model.has_direct_sampler()) throw InvalidInput("crude_mc: model has no direct sampler");
  if (model.dimension() != problem.dimension()) throw InvalidInput("crude_mc: dimension mismatch");
  Rng rng(seed);
  Vector x(model.dimension());
  std::size_t failures = 0;
  for (std::size_t i = 0; i < n; ++i) {
    model.draw(rng, x);
    failures += indicator(problem.value(x));
  }
  return finish(n, failures);
}

CrudeMcResult crude_mc_from_samples(const LimitStateProblem& problem, const Matrix& samples) {
  if (samples.rows() == 0) throw InvalidInput("crude_mc: no samples");
  std::size_t failures = 0;
  for (Eigen::Index i = 0; i < samples.rows(); ++i) failures += indicator(problem.value(samples.row(i).transpose()));
  return finish(samples.rows(), failures);
}

double SusSpace::component_log_ratio(const Vector& v, std::size_t i, double value) const {
  Vector w = v;
  w[i] = value;
  return log_density(w) - log_density(v);
}

StandardNormalSpace::StandardNormalSpace(std::size_t d, std::function<Vector(const Vector&)> map)
    : d_(d), map_(std::move(map)) {
  if (d == 0) throw InvalidInput("StandardNormalSpace: zero dimension");
}

double StandardNormalSpace::component_log_ratio(const Vector& v, std::size_t i, double value) const {
  return -0.5 * (value * value - v[i] * v[i]);
}

void StandardNormalSpace::draw(Rng& rng, Vector& out) const {
  std::normal_distribution<double> n01;
  out.resize(d_);
  for (std::size_t i = 0; i < d_; ++i) out[i] = n01(rng);
}

ModelSpace::ModelSpace(DensityPtr model) : model_(std::move(model)) {
  if (!model_) throw InvalidInput("ModelSpace: null model");
}

SusResult subset_simulation(const LimitStateProblem& problem, const SusSpace& space, const SusConfig& cfg,
                            std::uint64_t seed, const std::optional<Matrix>& first_level) {
  const std::size_t n = cfg.n_per_level;
  const std::size_t d = space.dimension();
  if (!(cfg.p0 > 0.0 && cfg.p0 < 1.0)) throw InvalidInput("subset_simulation: p0 outside (0, 1)");
  const std::size_t n_seeds = static_cast<std::size_t>(std::lround(cfg.p0 * n));
  if (n_seeds < 1 || n % n_seeds != 0) throw InvalidInput("subset_simulation: n_per_level * p0 must divide n_per_level");
  const std::size_t chain_len = n / n_seeds;
  if (d != problem.dimension()) throw InvalidInput("subset_simulation: dimension mismatch");

  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double half = 0.5 * cfg.proposal_width;
  std::uniform_real_distribution<double> step(-half, half);
  const std::uint64_t calls0 = problem.calls();

  std::vector<Vector> v(n);
  std::vector<double> g(n);
  if (first_level) {
    if (static_cast<std::size_t>(first_level->rows()) < n || static_cast<std::size_t>(first_level->cols()) != d) {
      throw InvalidInput("subset_simulation: first-level samples have the wrong shape");
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = first_level->row(i).transpose();
  } else {
    if (!space.has_direct_sampler()) throw InvalidInput("subset_simulation: no first-level sampler");
    for (std::size_t i = 0; i < n; ++i) space.draw(rng, v[i]);
  }
  for (std::size_t i = 0; i < n; ++i) g[i] = problem.value(space.to_model(v[i]));

  SusResult res;
  double log_p = 0.0;
  std::vector<std::size_t> order(n);
  for (std::size_t level = 0;; ++level) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g[a] < g[b]; });
    const double b = 0.5 * (g[order[n_seeds - 1]] + g[order[n_seeds]]);
    if (b <= 0.0) {
      std::size_t fails = 0;
      for (double gi : g) fails += indicator(gi);
      res.p = std::exp(log_p) * static_cast<double>(fails) / static_cast<double>(n);
      res.levels = level + 1;
      break;
    }
    if (level + 1 >= cfg.max_levels) throw StageError("sus", "maximum number of levels reached");
    res.thresholds.push_back(b);
    log_p += std::log(cfg.p0);

    std::vector<Vector> nv;
    std::vector<double> ng;
    nv.reserve(n);
    ng.reserve(n);
    std::size_t accepted = 0, proposed = 0;
    for (std::size_t s = 0; s < n_seeds; ++s) {
      Vector cur = v[order[s]];
      double gc = g[order[s]];
      nv.push_back(cur);
      ng.push_back(gc);
      for (std::size_t t = 1; t < chain_len; ++t) {
        Vector cand = cur;
        for (std::size_t i = 0; i < d; ++i) {
          const double xi = cur[i] + step(rng);
          const double lr = space.component_log_ratio(cand, i, xi);
          if (std::log(unif(rng)) < lr) cand[i] = xi;
        }
        ++proposed;
        if (cand != cur) {
          const double gn = problem.value(space.to_model(cand));
          if (gn <= b) {
            cur = std::move(cand);
            gc = gn;
            ++accepted;
          }
        }
        nv.push_back(cur);
        ng.push_back(gc);
      }
    }
    const double acc = static_cast<double>(accepted) / static_cast<double>(proposed);
    res.acceptance.push_back(acc);
    if (acc < cfg.min_acceptance) {
      throw StageError("sus", "acceptance " + std::to_string(acc) + " below stagnation limit at level " +
                                  std::to_string(level + 1));
    }
    v = std::move(nv);
    g = std::move(ng);
  }
  res.model_calls = problem.calls() - calls0;
  return res;
}

}  // namespace astpa
