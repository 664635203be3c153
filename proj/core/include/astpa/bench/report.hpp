#pragma once

#include "astpa/bench/runner.hpp"

#include <stdexcept>
#include <string>

namespace astpa::bench {

/// Raised when a report cannot be written or parsed.
class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Doubles are written with 17 significant digits; non-finite values as
/// the strings "nan", "inf" and "-inf".
std::string to_json(const TrialSummary& s, const std::string& created_at = "");
TrialSummary from_json(const std::string& text);

/// One row per trial followed by an aggregate row.
std::string to_csv(const TrialSummary& s);
/// RFC 4180 field quoting.
std::string csv_field(const std::string& v);
std::string format_double(double v);

struct ReportPaths {
  std::string json;
  std::string csv;
};

/// Writes <dir>/<problem>_<estimator>.{json,csv}, creating dir if needed.
ReportPaths emit_report(const TrialSummary& s, const std::string& dir);

}  // namespace astpa::bench
