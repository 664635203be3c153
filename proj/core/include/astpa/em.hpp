#pragma once

#include "astpa/gmm.hpp"

#include <vector>

namespace astpa {

struct EmConfig {
  std::size_t components = 1;
  CovarianceKind kind = CovarianceKind::kFull;
  std::size_t max_iterations = 500;
  /// Stop when the mean log-likelihood improves by less than this.
  double tolerance = 1e-6;
  /// Eigenvalue (full) or variance (diagonal) floor.
  double covariance_floor = 1e-8;
  /// Components whose weight drops below this are removed.
  double min_weight = 1e-6;

  /// About ten full-covariance components below d = 20, one diagonal
  /// component above.
  static EmConfig for_dimension(std::size_t d);
};

struct EmFit {
  GaussianMixture mixture;
  /// Mean log-likelihood after each iteration.
  std::vector<double> log_likelihood;
  std::size_t iterations = 0;
  std::size_t pruned = 0;
  bool converged = false;
};

/// Maximum-likelihood mixture fit by EM with k-means++ initialization.
EmFit fit_gmm(const Matrix& samples, const EmConfig& config, std::uint64_t seed);

}  // namespace astpa
