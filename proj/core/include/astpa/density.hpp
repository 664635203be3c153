#pragma once

#include "astpa/types.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace astpa {

enum class DensityFamily {
  kIndependentGaussian,
  kGaussianCopulaGumbel,
  kRosenbrock,
  kNealFunnel,
  kIndependentLognormal,
  kRingPosterior,
  kGaussianMixture,
  kPushforward,
  kScaled,
};

std::string to_string(DensityFamily f);

/// Log-density with analytic gradient. `evaluate` validates the input and
/// returns -inf / zero gradient outside the support.
class DensityModel {
 public:
  virtual ~DensityModel() = default;

  virtual DensityFamily family() const = 0;
  virtual std::size_t dimension() const = 0;

  LogDensity evaluate(const Vector& x) const;

  /// False when the log-density omits its normalizing constant.
  virtual bool normalized() const { return true; }
  virtual std::optional<Vector> mean() const { return std::nullopt; }
  virtual bool has_direct_sampler() const { return false; }

  /// n x d matrix of independent draws. Throws InvalidInput when the family
  /// has no direct sampler.
  Matrix sample_direct(std::size_t n, std::uint64_t seed) const;
  virtual void draw(Rng& rng, Vector& out) const;

 protected:
  virtual LogDensity do_evaluate(const Vector& x) const = 0;
};

using DensityPtr = std::shared_ptr<const DensityModel>;

class IndependentGaussian final : public DensityModel {
 public:
  IndependentGaussian(Vector mean, Vector sd);
  static std::shared_ptr<IndependentGaussian> standard(std::size_t d);

  DensityFamily family() const override { return DensityFamily::kIndependentGaussian; }
  std::size_t dimension() const override { return mean_.size(); }
  std::optional<Vector> mean() const override { return mean_; }
  bool has_direct_sampler() const override { return true; }
  void draw(Rng& rng, Vector& out) const override;

 protected:
  LogDensity do_evaluate(const Vector& x) const override;

 private:
  Vector mean_;
  Vector sd_;
  double log_norm_ = 0.0;
};

struct GumbelParams {
  double location = 0.0;
  double scale = 0.0;
};

/// Max-type Gumbel parameters matching a mean and coefficient of variation.
GumbelParams gumbel_params_from_moments(double mean, double cov);

/// Gaussian copula with equicorrelation `rho` and identical Gumbel marginals.
class GaussianCopulaGumbel final : public DensityModel {
 public:
  GaussianCopulaGumbel(std::size_t d, double marginal_mean, double marginal_cov, double rho);

  DensityFamily family() const override { return DensityFamily::kGaussianCopulaGumbel; }
  std::size_t dimension() const override { return d_; }
  std::optional<Vector> mean() const override { return Vector::Constant(d_, mean_); }
  bool has_direct_sampler() const override { return true; }
  void draw(Rng& rng, Vector& out) const override;

  const GumbelParams& marginal() const { return gumbel_; }
  double rho() const { return rho_; }
  /// Lower Cholesky factor of the copula correlation matrix.
  const Matrix& correlation_cholesky() const { return chol_; }
  /// Maps independent standard normals to the model space.
  Vector from_standard_normal(const Vector& u) const;

 protected:
  LogDensity do_evaluate(const Vector& x) const override;

 private:
  std::size_t d_;
  double mean_;
  double rho_;
  GumbelParams gumbel_;
  Matrix corr_inv_;
  Matrix chol_;
  double log_det_corr_ = 0.0;
};

/// pi(x) proportional to exp(-a (x1 - mu)^2 - sum_i b_i (x_i - x_{i-1}^2)^2).
class Rosenbrock final : public DensityModel {
 public:
  Rosenbrock(double a, std::vector<double> b, double mu);
  Rosenbrock(std::size_t d, double a, double b, double mu);

  DensityFamily family() const override { return DensityFamily::kRosenbrock; }
  std::size_t dimension() const override { return b_.size() + 1; }
  std::optional<Vector> mean() const override;
  bool has_direct_sampler() const override { return true; }
  void draw(Rng& rng, Vector& out) const override;

 protected:
  LogDensity do_evaluate(const Vector& x) const override;

 private:
  double a_;
  std::vector<double> b_;
  double mu_;
  double log_norm_ = 0.0;
};

/// x_d ~ N(0, 1); x_i | x_d ~ N(0, exp(x_d)) for i < d.
class NealFunnel final : public DensityModel {
 public:
  explicit NealFunnel(std::size_t d);

  DensityFamily family() const override { return DensityFamily::kNealFunnel; }
  std::size_t dimension() const override { return d_; }
  std::optional<Vector> mean() const override { return Vector::Zero(d_); }
  bool has_direct_sampler() const override { return true; }
  void draw(Rng& rng, Vector& out) const override;

 protected:
  LogDensity do_evaluate(const Vector& x) const override;

 private:
  std::size_t d_;
};

/// Independent lognormal coordinates, parameterized by the mean and standard
/// deviation of each coordinate (not of its logarithm).
class IndependentLognormal final : public DensityModel {
 public:
  IndependentLognormal(std::size_t d, double mean, double sd);

  DensityFamily family() const override { return DensityFamily::kIndependentLognormal; }
  std::size_t dimension() const override { return d_; }
  std::optional<Vector> mean() const override { return Vector::Constant(d_, mean_); }
  bool has_direct_sampler() const override { return true; }
  void draw(Rng& rng, Vector& out) const override;

  double log_mu() const { return log_mu_; }
  double log_sigma() const { return log_sigma_; }

 protected:
  LogDensity do_evaluate(const Vector& x) const override;

 private:
  std::size_t d_;
  double mean_;
  double log_mu_;
  double log_sigma_;
};

/// Unnormalized posterior of a standard normal prior observed through
/// y_j ~ N(|x|^2, sigma_y^2).
class RingPosterior final : public DensityModel {
 public:
  RingPosterior(std::size_t d, std::vector<double> observations, double sigma_y = 4.0);

  DensityFamily family() const override { return DensityFamily::kRingPosterior; }
  std::size_t dimension() const override { return d_; }
  bool normalized() const override { return false; }
  std::optional<Vector> mean() const override { return Vector::Zero(d_); }

  const std::vector<double>& observations() const { return y_; }
  double sigma_y() const { return sigma_y_; }

 protected:
  LogDensity do_evaluate(const Vector& x) const override;

 private:
  std::size_t d_;
  std::vector<double> y_;
  double sigma_y_;
  double y_mean_ = 0.0;
  double y_centered_ss_ = 0.0;
};

/// Reads one observation per line; blank lines and '#' comments are skipped.
std::vector<double> load_observations(const std::string& path);

/// Adds a constant to another model's log-density (log_scale = log c).
class ScaledDensity final : public DensityModel {
 public:
  ScaledDensity(DensityPtr base, double log_scale);

  DensityFamily family() const override { return DensityFamily::kScaled; }
  std::size_t dimension() const override { return base_->dimension(); }
  bool normalized() const override { return base_->normalized() && log_scale_ == 0.0; }
  std::optional<Vector> mean() const override { return base_->mean(); }

 protected:
  LogDensity do_evaluate(const Vector& x) const override;

 private:
  DensityPtr base_;
  double log_scale_;
};

}  // namespace astpa
