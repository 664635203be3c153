#include "astpa/density.hpp"

#include "astpa/math.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace astpa {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kCdfClamp = 1e-16;

LogDensity outside(std::size_t d) { return {kNegInf, Vector::Zero(d)}; }

// Central moments E[e^k] of N(0, v), k = 0..n.
std::vector<double> gaussian_central_moments(double v, int n) {
  std::vector<double> m(n + 1, 0.0);
  m[0] = 1.0;
  for (int k = 2; k <= n; k += 2) m[k] = m[k - 2] * (k - 1) * v;
  return m;
}

double binomial(int n, int k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); }

}  // namespace

std::string to_string(DensityFamily f) {
  switch (f) {
    case DensityFamily::kIndependentGaussian: return "independent-gaussian";
    case DensityFamily::kGaussianCopulaGumbel: return "gaussian-copula-gumbel";
    case DensityFamily::kRosenbrock: return "rosenbrock";
    case DensityFamily::kNealFunnel: return "neal-funnel";
    case DensityFamily::kIndependentLognormal: return "independent-lognormal";
    case DensityFamily::kRingPosterior: return "ring-posterior";
    case DensityFamily::kGaussianMixture: return "gaussian-mixture";
    case DensityFamily::kPushforward: return "pushforward";
    case DensityFamily::kScaled: return "scaled";
  }
  return "unknown";
}

LogDensity DensityModel::evaluate(const Vector& x) const {
  require_dimension(x, dimension(), "log-density");
  require_finite(x, "log-density");
  LogDensity r = do_evaluate(x);
  if (!(r.value > kNegInf) || std::isnan(r.value)) return outside(dimension());
  return r;
}

Matrix DensityModel::sample_direct(std::size_t n, std::uint64_t seed) const {
  if (!has_direct_sampler()) throw InvalidInput("sample_direct: no direct sampler for " + to_string(family()));
  Rng rng(seed);
  Matrix out(n, dimension());
  Vector x(dimension());
  for (std::size_t i = 0; i < n; ++i) {
    draw(rng, x);
    out.row(i) = x.transpose();
  }
  return out;
}

void DensityModel::draw(Rng&, Vector&) const {
  throw InvalidInput("draw: no direct sampler for " + to_string(family()));
}

// ---------------------------------------------------------------- Gaussian

IndependentGaussian::IndependentGaussian(Vector mean, Vector sd) : mean_(std::move(mean)), sd_(std::move(sd)) {
  if (mean_.size() == 0 || mean_.size() != sd_.size()) throw InvalidInput("IndependentGaussian: bad dimensions");
  if (!mean_.allFinite() || !(sd_.array() > 0.0).all()) throw InvalidInput("IndependentGaussian: bad parameters");
  log_norm_ = -0.5 * kLogTwoPi * mean_.size() - sd_.array().log().sum();
}

std::shared_ptr<IndependentGaussian> IndependentGaussian::standard(std::size_t d) {
  return std::make_shared<IndependentGaussian>(Vector::Zero(d), Vector::Ones(d));
}

LogDensity IndependentGaussian::do_evaluate(const Vector& x) const {
  const Vector z = (x - mean_).cwiseQuotient(sd_);
  return {log_norm_ - 0.5 * z.squaredNorm(), -z.cwiseQuotient(sd_)};
}

void IndependentGaussian::draw(Rng& rng, Vector& out) const {
  std::normal_distribution<double> n01;
  out.resize(mean_.size());
  for (Eigen::Index i = 0; i < mean_.size(); ++i) out[i] = mean_[i] + sd_[i] * n01(rng);
}

// ---------------------------------------------------------------- Gumbel copula

GumbelParams gumbel_params_from_moments(double mean, double cov) {
  if (!std::isfinite(mean) || !std::isfinite(cov) || cov < 0.0) {
    throw InvalidInput("gumbel_params_from_moments: need finite mean and cov >= 0");
  }
  const double sd = std::abs(mean) * cov;
  GumbelParams p;
  p.scale = sd * std::sqrt(6.0) / kPi;
  p.location = mean - kEulerGamma * p.scale;
  return p;
}

GaussianCopulaGumbel::GaussianCopulaGumbel(std::size_t d, double marginal_mean, double marginal_cov, double rho)
    : d_(d), mean_(marginal_mean), rho_(rho), gumbel_(gumbel_params_from_moments(marginal_mean, marginal_cov)) {
  if (d == 0) throw InvalidInput("GaussianCopulaGumbel: d must be positive");
  if (!(gumbel_.scale > 0.0)) throw InvalidInput("GaussianCopulaGumbel: marginal scale must be positive");
  const double lo = d > 1 ? -1.0 / (static_cast<double>(d) - 1.0) : -1.0;
  if (!(rho > lo && rho < 1.0)) throw InvalidInput("GaussianCopulaGumbel: correlation matrix not positive definite");
  Matrix r = Matrix::Constant(d, d, rho);
  r.diagonal().setOnes();
  Eigen::LLT<Matrix> llt(r);
  if (llt.info() != Eigen::Success) throw InvalidInput("GaussianCopulaGumbel: correlation matrix not positive definite");
  chol_ = llt.matrixL();
  corr_inv_ = llt.solve(Matrix::Identity(d, d));
  log_det_corr_ = 2.0 * chol_.diagonal().array().log().sum();
}

LogDensity GaussianCopulaGumbel::do_evaluate(const Vector& x) const {
  const double beta = gumbel_.scale;
  Vector u(d_), du(d_), dlogf(d_);
  double log_marginals = 0.0;
  for (std::size_t i = 0; i < d_; ++i) {
    const double z = (x[i] - gumbel_.location) / beta;
    const double e = std::exp(-z);
    if (!std::isfinite(e)) return outside(d_);
    const double log_f = -std::log(beta) - z - e;
    log_marginals += log_f;
    dlogf[i] = (e - 1.0) / beta;
    const double cdf = std::exp(-e);
    const double sf = -std::expm1(-e);
    bool clamped = false;
    if (cdf < 0.5) {
      clamped = cdf < kCdfClamp;
      u[i] = std_normal_quantile(std::max(cdf, kCdfClamp));
    } else {
      clamped = sf < kCdfClamp;
      u[i] = std_normal_isf(std::max(sf, kCdfClamp));
    }
    du[i] = clamped ? 0.0 : std::exp(log_f - std_normal_log_pdf(u[i]));
  }
  const Vector ru = corr_inv_ * u;
  const double value = -0.5 * u.dot(ru) - 0.5 * log_det_corr_ + 0.5 * u.squaredNorm() + log_marginals;
  Vector grad = (u - ru).cwiseProduct(du) + dlogf;
  return {value, std::move(grad)};
}

Vector GaussianCopulaGumbel::from_standard_normal(const Vector& u) const {
  require_dimension(u, d_, "from_standard_normal");
  const Vector z = chol_ * u;
  Vector x(d_);
  for (std::size_t i = 0; i < d_; ++i) {
    const double log_cdf = z[i] < 0.0 ? std_normal_log_cdf(z[i]) : std::log1p(-std_normal_sf(z[i]));
    x[i] = gumbel_.location - gumbel_.scale * std::log(-log_cdf);
  }
  return x;
}

void GaussianCopulaGumbel::draw(Rng& rng, Vector& out) const {
  std::normal_distribution<double> n01;
  Vector u(d_);
  for (std::size_t i = 0; i < d_; ++i) u[i] = n01(rng);
  out = from_standard_normal(u);
}

// ---------------------------------------------------------------- Rosenbrock

Rosenbrock::Rosenbrock(double a, std::vector<double> b, double mu) : a_(a), b_(std::move(b)), mu_(mu) {
  if (b_.empty()) throw InvalidInput("Rosenbrock: need d >= 2");
  if (!(a_ > 0.0) || !std::isfinite(mu_)) throw InvalidInput("Rosenbrock: a must be positive");
  for (double bi : b_) {
    if (!(bi > 0.0)) throw InvalidInput("Rosenbrock: b must be positive");
  }
  log_norm_ = 0.5 * std::log(a_ / kPi);
  for (double bi : b_) log_norm_ += 0.5 * std::log(bi / kPi);
}

Rosenbrock::Rosenbrock(std::size_t d, double a, double b, double mu)
    : Rosenbrock(a, std::vector<double>(d > 1 ? d - 1 : 0, b), mu) {}

LogDensity Rosenbrock::do_evaluate(const Vector& x) const {
  const std::size_t d = dimension();
  double value = log_norm_ - a_ * (x[0] - mu_) * (x[0] - mu_);
  Vector grad = Vector::Zero(d);
  grad[0] = -2.0 * a_ * (x[0] - mu_);
  for (std::size_t i = 1; i < d; ++i) {
    const double r = x[i] - x[i - 1] * x[i - 1];
    value -= b_[i - 1] * r * r;
    grad[i] -= 2.0 * b_[i - 1] * r;
    grad[i - 1] += 4.0 * b_[i - 1] * r * x[i - 1];
  }
  return {value, std::move(grad)};
}

std::optional<Vector> Rosenbrock::mean() const {
  // Raw moments of x_k follow from those of x_{k-1}: x_k = x_{k-1}^2 + e_k.
  const int d = static_cast<int>(dimension());
  if (d > 8) return std::nullopt;
  const int top = 1 << (d - 1);
  std::vector<double> moments(top + 1, 0.0);
  {
    const auto c = gaussian_central_moments(0.5 / a_, top);
    for (int n = 0; n <= top; ++n) {
      double s = 0.0;
      for (int k = 0; k <= n; ++k) s += binomial(n, k) * std::pow(mu_, n - k) * c[k];
      moments[n] = s;
    }
  }
  Vector m(d);
  m[0] = moments[1];
  for (int k = 1; k < d; ++k) {
    const int order = top >> k;
    const auto c = gaussian_central_moments(0.5 / b_[k - 1], order);
    std::vector<double> next(order + 1, 0.0);
    for (int n = 0; n <= order; ++n) {
      double s = 0.0;
      for (int j = 0; j <= n; ++j) s += binomial(n, j) * moments[2 * j] * c[n - j];
      next[n] = s;
    }
    moments = std::move(next);
    m[k] = moments[1];
  }
  if (!m.allFinite()) return std::nullopt;
  return m;
}

void Rosenbrock::draw(Rng& rng, Vector& out) const {
  std::normal_distribution<double> n01;
  const std::size_t d = dimension();
  out.resize(d);
  out[0] = mu_ + std::sqrt(0.5 / a_) * n01(rng);
  for (std::size_t i = 1; i < d; ++i) out[i] = out[i - 1] * out[i - 1] + std::sqrt(0.5 / b_[i - 1]) * n01(rng);
}

// ---------------------------------------------------------------- funnel

NealFunnel::NealFunnel(std::size_t d) : d_(d) {
  if (d < 2) throw InvalidInput("NealFunnel: need d >= 2");
}

LogDensity NealFunnel::do_evaluate(const Vector& x) const {
  const double v = x[d_ - 1];
  const double inv_var = std::exp(-v);
  const std::size_t k = d_ - 1;
  double ss = 0.0;
  for (std::size_t i = 0; i < k; ++i) ss += x[i] * x[i];
  const double value = -0.5 * kLogTwoPi * d_ - 0.5 * k * v - 0.5 * ss * inv_var - 0.5 * v * v;
  if (!std::isfinite(value)) return outside(d_);
  Vector grad(d_);
  grad.head(k) = -x.head(k) * inv_var;
  grad[k] = -0.5 * k + 0.5 * ss * inv_var - v;
  return {value, std::move(grad)};
}

void NealFunnel::draw(Rng& rng, Vector& out) const {
  std::normal_distribution<double> n01;
  out.resize(d_);
  const double v = n01(rng);
  const double sd = std::exp(0.5 * v);
  for (std::size_t i = 0; i + 1 < d_; ++i) out[i] = sd * n01(rng);
  out[d_ - 1] = v;
}

// ---------------------------------------------------------------- lognormal

IndependentLognormal::IndependentLognormal(std::size_t d, double mean, double sd) : d_(d), mean_(mean) {
  if (d == 0 || !(mean > 0.0) || !(sd > 0.0)) throw InvalidInput("IndependentLognormal: bad parameters");
  const double s2 = std::log1p((sd / mean) * (sd / mean));
  log_sigma_ = std::sqrt(s2);
  log_mu_ = std::log(mean) - 0.5 * s2;
}

LogDensity IndependentLognormal::do_evaluate(const Vector& x) const {
  if ((x.array() <= 0.0).any()) return outside(d_);
  const Vector lx = x.array().log();
  const Vector z = (lx.array() - log_mu_) / log_sigma_;
  const double value = -static_cast<double>(d_) * (0.5 * kLogTwoPi + std::log(log_sigma_)) - lx.sum() - 0.5 * z.squaredNorm();
  Vector grad = -(1.0 + z.array() / log_sigma_) / x.array();
  return {value, std::move(grad)};
}

void IndependentLognormal::draw(Rng& rng, Vector& out) const {
  std::normal_distribution<double> n01;
  out.resize(d_);
  for (std::size_t i = 0; i < d_; ++i) out[i] = std::exp(log_mu_ + log_sigma_ * n01(rng));
}

// ---------------------------------------------------------------- ring

RingPosterior::RingPosterior(std::size_t d, std::vector<double> observations, double sigma_y)
    : d_(d), y_(std::move(observations)), sigma_y_(sigma_y) {
  if (d == 0) throw InvalidInput("RingPosterior: d must be positive");
  if (y_.empty()) throw InvalidInput("RingPosterior: no observations");
  if (!(sigma_y > 0.0)) throw InvalidInput("RingPosterior: sigma_y must be positive");
  double s = 0.0;
  for (double v : y_) {
    if (!std::isfinite(v)) throw InvalidInput("RingPosterior: non-finite observation");
    s += v;
  }
  y_mean_ = s / y_.size();
  for (double v : y_) y_centered_ss_ += (v - y_mean_) * (v - y_mean_);
}

LogDensity RingPosterior::do_evaluate(const Vector& x) const {
  // The data enter only through their mean and centred sum of squares.
  const double n = static_cast<double>(y_.size());
  const double s = x.squaredNorm();
  const double inv2 = 1.0 / (sigma_y_ * sigma_y_);
  const double diff = y_mean_ - s;
  const double value = -0.5 * s - 0.5 * inv2 * (y_centered_ss_ + n * diff * diff);
  Vector grad = x * (2.0 * (-0.5 + inv2 * n * diff));
  return {value, std::move(grad)};
}

std::vector<double> load_observations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("load_observations: cannot open " + path);
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    double v = 0.0;
    if (!(ss >> v) || !std::isfinite(v)) throw InvalidInput("load_observations: bad value '" + line + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInput("load_observations: empty file " + path);
  return out;
}

// ---------------------------------------------------------------- scaled

ScaledDensity::ScaledDensity(DensityPtr base, double log_scale) : base_(std::move(base)), log_scale_(log_scale) {
  if (!base_) throw InvalidInput("ScaledDensity: null base");
  if (!std::isfinite(log_scale_)) throw InvalidInput("ScaledDensity: non-finite scale");
}

LogDensity ScaledDensity::do_evaluate(const Vector& x) const {
  LogDensity r = base_->evaluate(x);
  if (r.in_support()) r.value += log_scale_;
  return r;
}

}  // namespace astpa
