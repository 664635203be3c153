#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace astpa::bench {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// properties: criteria 8-14 (fast, deterministic); tables: 1-7 (repeated
/// pipeline runs against published figures).
enum class Suite { kProperties, kTables, kAll };

Suite parse_suite(const std::string& s);
std::vector<int> suite_criteria(Suite s);

struct VerifyOptions {
  /// Repetitions for the table criteria.
  std::size_t reps = 100;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
};

CheckResult run_criterion(int id, const VerifyOptions& options);

/// Runs each criterion of the suite; `on_result` sees results as they finish.
std::vector<CheckResult> run_suite(Suite suite, const VerifyOptions& options,
                                   const std::function<void(const CheckResult&)>& on_result = {});

/// C_pi of the two-dimensional ring posterior by adaptive quadrature over s = |x|^2.
double ring_c_pi_quadrature(const std::vector<double>& y, double sigma_y = 4.0);

}  // namespace astpa::bench
