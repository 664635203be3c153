#include "astpa/math.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace astpa {

void require_dimension(const Vector& x, std::size_t d, const char* what) {
  if (static_cast<std::size_t>(x.size()) != d) {
    throw InvalidInput(std::string(what) + ": expected dimension " + std::to_string(d) +
                       ", got " + std::to_string(x.size()));
  }
}

void require_finite(const Vector& x, const char* what) {
  if (!x.allFinite()) throw InvalidInput(std::string(what) + ": non-finite input");
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double std_normal_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double std_normal_log_cdf(double x) {
  if (x > -5.0) return std::log(std_normal_cdf(x));
  // erfc underflows near -38; switch to the asymptotic series of Mills' ratio.
  if (x > -37.0) return std::log(0.5 * std::erfc(-x / std::sqrt(2.0)));
  const double x2 = x * x;
  const double series = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2);
  return -0.5 * x2 - std::log(-x) - 0.5 * kLogTwoPi + std::log(series);
}

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw InvalidInput("std_normal_quantile: probability outside [0, 1]");
  }
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

double std_normal_isf(double q) { return -std_normal_quantile(q); }

double std_normal_log_pdf(double x) { return -0.5 * (x * x + kLogTwoPi); }

double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double log_sum_exp(std::span<const double> v) {
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - m);
  return m + std::log(acc);
}

}  // namespace astpa
