#include "astpa/em.hpp"

#include "astpa/math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace astpa {

EmConfig EmConfig::for_dimension(std::size_t d) {
  EmConfig c;
  if (d < 20) {
    c.components = 10;
    c.kind = CovarianceKind::kFull;
  } else {
    c.components = 1;
    c.kind = CovarianceKind::kDiagonal;
  }
  return c;
}

namespace {

struct Params {
  std::vector<double> weights;
  std::vector<Vector> means;
  std::vector<Matrix> covs;  // full d x d, or d x 1 variances
};

Matrix floor_covariance(Matrix c, CovarianceKind kind, double floor) {
  if (kind == CovarianceKind::kDiagonal) return c.cwiseMax(floor);
  c = 0.5 * (c + c.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(c);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() >= floor) return c;
  const Vector lam = es.eigenvalues().cwiseMax(floor);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

std::vector<std::size_t> kmeans_pp(const Matrix& x, std::size_t k, Rng& rng) {
  const std::size_t n = x.rows();
  std::vector<std::size_t> centers;
  centers.push_back(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  while (centers.size() < k) {
    const auto c = x.row(centers.back());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = std::min(dist[i], (x.row(i) - c).squaredNorm());
      total += dist[i];
    }
    if (!(total > 0.0)) break;  // fewer distinct points than components
    double u = std::uniform_real_distribution<double>(0.0, total)(rng);
    std::size_t pick = n - 1;
    for (std::size_t i = 0; i < n; ++i) {
      u -= dist[i];
      if (u <= 0.0 && dist[i] > 0.0) {
        pick = i;
        break;
      }
    }
    centers.push_back(pick);
  }
  return centers;
}

// M-step from responsibilities (n x k).
Params m_step(const Matrix& x, const Matrix& resp, const EmConfig& cfg) {
  const std::size_t n = x.rows(), d = x.cols(), k = resp.cols();
  Params p;
  for (std::size_t j = 0; j < k; ++j) {
    const double nk = resp.col(j).sum();
    p.weights.push_back(nk / static_cast<double>(n));
    Vector mu = Vector::Zero(d);
    if (nk > 0.0) mu = (x.transpose() * resp.col(j)) / nk;
    p.means.push_back(mu);
    const Matrix centred = x.rowwise() - mu.transpose();
    Matrix cov;
    if (cfg.kind == CovarianceKind::kDiagonal) {
      cov = nk > 0.0 ? Matrix((centred.array().square().colwise() * resp.col(j).array()).colwise().sum().transpose() / nk)
                     : Matrix(Matrix::Ones(d, 1));
    } else {
      cov = nk > 0.0 ? Matrix(centred.transpose() * resp.col(j).asDiagonal() * centred / nk) : Matrix(Matrix::Identity(d, d));
    }
    p.covs.push_back(floor_covariance(std::move(cov), cfg.kind, cfg.covariance_floor));
  }
  return p;
}

GaussianMixture build(const Params& p, CovarianceKind kind) {
  double total = 0.0;
  for (double w : p.weights) total += w;
  std::vector<double> w = p.weights;
  for (double& v : w) v /= total;
  return GaussianMixture(std::move(w), p.means, p.covs, kind);
}

// Drops components with tiny weight. Returns the number removed.
std::size_t prune(Params& p, double min_weight) {
  std::size_t removed = 0;
  Params kept;
  for (std::size_t j = 0; j < p.weights.size(); ++j) {
    if (p.weights[j] < min_weight) {
      ++removed;
      continue;
    }
    kept.weights.push_back(p.weights[j]);
    kept.means.push_back(p.means[j]);
    kept.covs.push_back(p.covs[j]);
  }
  if (kept.weights.empty()) throw StageError("em", "all mixture components collapsed");
  p = std::move(kept);
  return removed;
}

// E-step: fills responsibilities and returns the mean log-likelihood.
double e_step(const Matrix& x, const GaussianMixture& q, Matrix& resp) {
  const std::size_t n = x.rows();
  resp.resize(n, q.components());
  Vector lc;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    q.component_log_densities(x.row(i).transpose(), lc);
    const double lse = log_sum_exp(std::span<const double>(lc.data(), lc.size()));
    total += lse;
    resp.row(i) = (lc.array() - lse).exp().transpose();
  }
  return total / static_cast<double>(n);
}

}  // namespace

EmFit fit_gmm(const Matrix& x, const EmConfig& cfg, std::uint64_t seed) {
  const std::size_t n = x.rows(), d = x.cols();
  if (cfg.components < 1) throw InvalidInput("fit_gmm: need at least one component");
  if (n < 2 || d == 0) throw InvalidInput("fit_gmm: need at least two samples");
  if (!x.allFinite()) throw InvalidInput("fit_gmm: non-finite samples");
  const std::size_t k = std::min(cfg.components, n);

  Rng rng(seed);
  // Hard assignment to the nearest k-means++ centre gives the first M-step.
  const std::vector<std::size_t> centers = kmeans_pp(x, k, rng);
  Matrix resp = Matrix::Zero(n, centers.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centers.size(); ++j) {
      const double dd = (x.row(i) - x.row(centers[j])).squaredNorm();
      if (dd < best_d) {
        best_d = dd;
        best = j;
      }
    }
    resp(i, best) = 1.0;
  }

  Params p = m_step(x, resp, cfg);
  const std::size_t pruned = prune(p, cfg.min_weight);
  EmFit fit{build(p, cfg.kind), {}, 0, pruned, false};
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    const double ll = e_step(x, fit.mixture, resp);
    if (!std::isfinite(ll)) throw StageError("em", "log-likelihood is not finite");
    fit.log_likelihood.push_back(ll);
    fit.iterations = it + 1;
    if (ll - prev < cfg.tolerance && it > 0) {
      fit.converged = true;
      break;
    }
    prev = ll;
    p = m_step(x, resp, cfg);
    fit.pruned += prune(p, cfg.min_weight);
    fit.mixture = build(p, cfg.kind);
  }
  return fit;
}

}  // namespace astpa
