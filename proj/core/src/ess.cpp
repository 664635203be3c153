#include "astpa/ess.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace astpa {

double effective_sample_size(std::span<const double> chain) {
  const std::size_t n = chain.size();
  if (n < 4) throw InvalidInput("effective_sample_size: need at least 4 states");
  double mean = 0.0;
  for (double v : chain) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = chain[i] - mean;

  auto autocov = [&](std::size_t lag) {
    double s = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) s += c[i] * c[i + lag];
    return s / static_cast<double>(n);
  };
  const double c0 = autocov(0);
  if (!(c0 > 0.0)) return 1.0;  // constant chain carries no information beyond one draw

  // Sum pairs Gamma_k = rho_{2k} + rho_{2k+1} while positive, enforcing monotonicity.
  double tau_sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; 2 * k + 1 < n; ++k) {
    const double pair = (autocov(2 * k) + autocov(2 * k + 1)) / c0;
    if (!(pair > 0.0)) break;
    const double mono = std::min(pair, prev);
    tau_sum += mono;
    prev = mono;
  }
  const double tau = std::max(-1.0 + 2.0 * tau_sum, 1.0 / std::log10(static_cast<double>(n)));
  return static_cast<double>(n) / tau;
}

Vector effective_sample_sizes(const Matrix& states) {
  Vector out(states.cols());
  std::vector<double> col(states.rows());
  for (Eigen::Index j = 0; j < states.cols(); ++j) {
    for (Eigen::Index i = 0; i < states.rows(); ++i) col[i] = states(i, j);
    out[j] = effective_sample_size(col);
  }
  return out;
}

double ess_min(const Matrix& states) {
  if (states.cols() == 0) throw InvalidInput("ess_min: no coordinates");
  return effective_sample_sizes(states).minCoeff();
}

std::size_t thinning_stride(std::size_t n, double ess) {
  if (!(ess > 0.0)) return 30;
  const double j = std::floor(static_cast<double>(n) / (4.0 * ess));
  return static_cast<std::size_t>(std::clamp(j, 3.0, 30.0));
}

}  // namespace astpa
