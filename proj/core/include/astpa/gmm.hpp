#pragma once

#include "astpa/density.hpp"

#include <vector>

namespace astpa {

enum class CovarianceKind { kFull, kDiagonal };

/// Finite Gaussian mixture. Diagonal mixtures store variances only.
class GaussianMixture {
 public:
  GaussianMixture(std::vector<double> weights, std::vector<Vector> means, std::vector<Matrix> covariances,
                  CovarianceKind kind = CovarianceKind::kFull);

  std::size_t dimension() const { return dim_; }
  std::size_t components() const { return weights_.size(); }
  CovarianceKind kind() const { return kind_; }
  double weight(std::size_t k) const { return weights_[k]; }
  const Vector& mean(std::size_t k) const { return means_[k]; }
  /// Full covariance of component k (a diagonal matrix in diagonal mode).
  Matrix covariance(std::size_t k) const;

  double log_density(const Vector& x) const;
  /// Per-component log(w_k N_k(x)), useful for responsibilities.
  void component_log_densities(const Vector& x, Vector& out) const;
  LogDensity log_density_with_grad(const Vector& x) const;
  Vector sample(Rng& rng) const;
  Matrix sample(std::size_t n, std::uint64_t seed) const;

 private:
  std::size_t dim_ = 0;
  CovarianceKind kind_;
  std::vector<double> weights_;
  std::vector<Vector> means_;
  std::vector<Matrix> chol_;       // full mode: lower Cholesky factor
  std::vector<Vector> variances_;  // diagonal mode
  std::vector<double> log_norm_;   // log w_k - 0.5 log det(2 pi Sigma_k)
};

double eval_gmm(const GaussianMixture& q, const Vector& x);

/// DensityModel view of a mixture.
class MixtureDensity final : public DensityModel {
 public:
  explicit MixtureDensity(GaussianMixture q) : q_(std::move(q)) {}

  DensityFamily family() const override { return DensityFamily::kGaussianMixture; }
  std::size_t dimension() const override { return q_.dimension(); }
  bool has_direct_sampler() const override { return true; }
  void draw(Rng& rng, Vector& out) const override { out = q_.sample(rng); }
  const GaussianMixture& mixture() const { return q_; }

 protected:
  LogDensity do_evaluate(const Vector& x) const override { return q_.log_density_with_grad(x); }

 private:
  GaussianMixture q_;
};

}  // namespace astpa
