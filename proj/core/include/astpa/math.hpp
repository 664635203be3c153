#pragma once

#include "astpa/types.hpp"

#include <span>

namespace astpa {

inline constexpr double kLogTwoPi = 1.8378770664093454836;
inline constexpr double kPi = 3.14159265358979323846;

double std_normal_cdf(double x);
/// Upper tail 1 - Phi(x), accurate for large x.
double std_normal_sf(double x);
double std_normal_log_cdf(double x);
double std_normal_quantile(double p);
/// Quantile of the upper tail: returns x with 1 - Phi(x) = q.
double std_normal_isf(double q);
double std_normal_log_pdf(double x);

/// log(1 + exp(x)) without overflow.
double softplus(double x);
double sigmoid(double x);
double log_sum_exp(std::span<const double> v);

}  // namespace astpa
