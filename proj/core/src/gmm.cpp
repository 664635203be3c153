#include "astpa/gmm.hpp"

#include "astpa/math.hpp"

#include <cmath>
#include <numeric>

namespace astpa {

GaussianMixture::GaussianMixture(std::vector<double> weights, std::vector<Vector> means,
                                 std::vector<Matrix> covariances, CovarianceKind kind)
    : kind_(kind), weights_(std::move(weights)), means_(std::move(means)) {
  const std::size_t k = weights_.size();
  if (k == 0 || means_.size() != k || covariances.size() != k) {
    throw InvalidInput("GaussianMixture: need matching, non-empty weights/means/covariances");
  }
  dim_ = means_[0].size();
  if (dim_ == 0) throw InvalidInput("GaussianMixture: zero dimension");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidInput("GaussianMixture: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidInput("GaussianMixture: weights must sum to 1");
  for (double& w : weights_) w /= total;

  for (std::size_t j = 0; j < k; ++j) {
    if (static_cast<std::size_t>(means_[j].size()) != dim_ || !means_[j].allFinite()) {
      throw InvalidInput("GaussianMixture: bad mean");
    }
    const Matrix& c = covariances[j];
    double log_det = 0.0;
    if (kind_ == CovarianceKind::kDiagonal) {
      // Accept either a d x 1 column of variances or a d x d matrix.
      Vector v = c.cols() == 1 ? Vector(c.col(0)) : Vector(c.diagonal());
      if (static_cast<std::size_t>(v.size()) != dim_ || !(v.array() > 0.0).all()) {
        throw InvalidInput("GaussianMixture: diagonal covariance must be positive");
      }
      log_det = v.array().log().sum();
      variances_.push_back(std::move(v));
    } else {
      if (static_cast<std::size_t>(c.rows()) != dim_ || static_cast<std::size_t>(c.cols()) != dim_) {
        throw InvalidInput("GaussianMixture: covariance has wrong shape");
      }
      Eigen::LLT<Matrix> llt(c);
      if (llt.info() != Eigen::Success) throw InvalidInput("GaussianMixture: covariance not positive definite");
      Matrix l = llt.matrixL();
      log_det = 2.0 * l.diagonal().array().log().sum();
      chol_.push_back(std::move(l));
    }
    log_norm_.push_back(std::log(weights_[j]) - 0.5 * (dim_ * kLogTwoPi + log_det));
  }
}

Matrix GaussianMixture::covariance(std::size_t k) const {
  if (kind_ == CovarianceKind::kDiagonal) return variances_[k].asDiagonal();
  return chol_[k] * chol_[k].transpose();
}

void GaussianMixture::component_log_densities(const Vector& x, Vector& out) const {
  require_dimension(x, dim_, "GaussianMixture");
  out.resize(components());
  for (std::size_t k = 0; k < components(); ++k) {
    const Vector diff = x - means_[k];
    double maha;
    if (kind_ == CovarianceKind::kDiagonal) {
      maha = (diff.array().square() / variances_[k].array()).sum();
    } else {
      maha = chol_[k].triangularView<Eigen::Lower>().solve(diff).squaredNorm();
    }
    out[k] = log_norm_[k] - 0.5 * maha;
  }
}

double GaussianMixture::log_density(const Vector& x) const {
  Vector lc;
  component_log_densities(x, lc);
  return log_sum_exp(std::span<const double>(lc.data(), lc.size()));
}

LogDensity GaussianMixture::log_density_with_grad(const Vector& x) const {
  Vector lc;
  component_log_densities(x, lc);
  const double total = log_sum_exp(std::span<const double>(lc.data(), lc.size()));
  Vector grad = Vector::Zero(dim_);
  for (std::size_t k = 0; k < components(); ++k) {
    const double r = std::exp(lc[k] - total);
    const Vector diff = x - means_[k];
    if (kind_ == CovarianceKind::kDiagonal) {
      grad -= r * diff.cwiseQuotient(variances_[k]);
    } else {
      const auto lv = chol_[k].triangularView<Eigen::Lower>();
      grad -= r * lv.transpose().solve(lv.solve(diff));
    }
  }
  return {total, std::move(grad)};
}

Vector GaussianMixture::sample(Rng& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> n01;
  const double u = unif(rng);
  std::size_t k = 0;
  double acc = weights_[0];
  while (u >= acc && k + 1 < components()) acc += weights_[++k];
  Vector z(dim_);
  for (std::size_t i = 0; i < dim_; ++i) z[i] = n01(rng);
  if (kind_ == CovarianceKind::kDiagonal) return means_[k] + variances_[k].cwiseSqrt().cwiseProduct(z);
  return means_[k] + chol_[k] * z;
}

Matrix GaussianMixture::sample(std::size_t n, std::uint64_t seed) const {
  Rng rng(seed);
  Matrix out(n, dim_);
  for (std::size_t i = 0; i < n; ++i) out.row(i) = sample(rng).transpose();
  return out;
}

double eval_gmm(const GaussianMixture& q, const Vector& x) { return q.log_density(x); }

}  // namespace astpa
