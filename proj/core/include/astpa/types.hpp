#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace astpa {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

/// Raised for malformed arguments: dimension mismatches, non-finite inputs,
/// parameters outside their documented domain.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a pipeline stage cannot proceed (sampler stuck, EM collapse,
/// non-finite objective). Carries the stage name for diagnostics.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Log-density value together with its gradient. Outside the support the
/// value is -inf and the gradient is all zeros.
struct LogDensity {
  double value = 0.0;
  Vector grad;

  bool in_support() const { return value > -std::numeric_limits<double>::infinity(); }
};

void require_dimension(const Vector& x, std::size_t d, const char* what);
void require_finite(const Vector& x, const char* what);

}  // namespace astpa
