#pragma once

#include "astpa/types.hpp"

#include <span>

namespace astpa {

/// Effective sample size of a scalar chain using Geyer's initial monotone
/// positive sequence estimator of the integrated autocorrelation time.
double effective_sample_size(std::span<const double> chain);

/// Per-coordinate ESS of an N x d matrix of states.
Vector effective_sample_sizes(const Matrix& states);
double ess_min(const Matrix& states);

/// floor(N / (4 ESS_min)) clamped to [3, 30].
std::size_t thinning_stride(std::size_t n, double ess_min);

}  // namespace astpa
