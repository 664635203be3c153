#include "astpa/bench/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace astpa::bench {

namespace {

using Json = nlohmann::ordered_json;

Json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double to_num(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ReportError("report: bad number '" + s + "'");
  }
  return j.get<double>();
}

Json trial_json(const TrialRecord& t) {
  Json j;
  j["index"] = t.index;
  j["seed"] = t.seed;
  j["ok"] = t.ok;
  j["error"] = t.error;
  j["p"] = num(t.p);
  j["cov"] = num(t.cov);
  j["ledger"] = {{"n_total", t.n_total}, {"n_adam", t.n_adam}, {"n_burnin", t.n_burnin}, {"n", t.n}, {"m", t.m}};
  j["ess_min"] = num(t.ess_min);
  j["acceptance_rate"] = num(t.acceptance_rate);
  j["warnings"] = t.warnings;
  return j;
}

TrialRecord trial_from(const Json& j) {
  TrialRecord t;
  t.index = j.at("index").get<std::size_t>();
  t.seed = j.at("seed").get<std::uint64_t>();
  t.ok = j.at("ok").get<bool>();
  t.error = j.at("error").get<std::string>();
  t.p = to_num(j.at("p"));
  t.cov = to_num(j.at("cov"));
  const Json& l = j.at("ledger");
  t.n_total = l.at("n_total").get<std::uint64_t>();
  t.n_adam = l.at("n_adam").get<std::uint64_t>();
  t.n_burnin = l.at("n_burnin").get<std::uint64_t>();
  t.n = l.at("n").get<std::uint64_t>();
  t.m = l.at("m").get<std::uint64_t>();
  t.ess_min = to_num(j.at("ess_min"));
  t.acceptance_rate = to_num(j.at("acceptance_rate"));
  t.warnings = j.at("warnings").get<std::vector<std::string>>();
  return t;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_json(const TrialSummary& s, const std::string& created_at) {
  Json j;
  j["run"] = {{"tool", "astpa-bench"}, {"created_at", created_at}, {"seed_base", s.seed_base}};
  j["problem"] = s.problem;
  j["estimator"] = s.estimator;
  j["reps"] = s.reps;
  j["failed"] = s.failed;
  j["params"] = {{"sigma", num(s.sigma)}, {"q", num(s.q)}};
  j["summary"] = {{"mean_p", num(s.mean_p)},
                  {"sampling_cov", num(s.sampling_cov)},
                  {"mean_analytical_cov", num(s.mean_analytical_cov)},
                  {"mean_n_total", num(s.mean_n_total)},
                  {"reference_p", num(s.reference_p)}};
  j["log_c_pi"] = s.log_c_pi ? num(*s.log_c_pi) : Json(nullptr);
  Json trials = Json::array();
  for (const auto& t : s.trials) trials.push_back(trial_json(t));
  j["trials"] = std::move(trials);
  return j.dump(2);
}

TrialSummary from_json(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    TrialSummary s;
    s.seed_base = j.at("run").at("seed_base").get<std::uint64_t>();
    s.problem = j.at("problem").get<std::string>();
    s.estimator = j.at("estimator").get<std::string>();
    s.reps = j.at("reps").get<std::size_t>();
    s.failed = j.at("failed").get<std::size_t>();
    s.sigma = to_num(j.at("params").at("sigma"));
    s.q = to_num(j.at("params").at("q"));
    const Json& a = j.at("summary");
    s.mean_p = to_num(a.at("mean_p"));
    s.sampling_cov = to_num(a.at("sampling_cov"));
    s.mean_analytical_cov = to_num(a.at("mean_analytical_cov"));
    s.mean_n_total = to_num(a.at("mean_n_total"));
    s.reference_p = to_num(a.at("reference_p"));
    if (!j.at("log_c_pi").is_null()) s.log_c_pi = to_num(j.at("log_c_pi"));
    for (const auto& t : j.at("trials")) s.trials.push_back(trial_from(t));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ReportError(std::string("report: malformed JSON: ") + e.what());
  }
}

std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\r\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string to_csv(const TrialSummary& s) {
  std::ostringstream os;
  os << "record,index,seed,ok,error,p,cov,n_total,n_adam,n_burnin,n,m,ess_min,acceptance_rate,warnings\r\n";
  for (const auto& t : s.trials) {
    std::string w;
    for (std::size_t i = 0; i < t.warnings.size(); ++i) w += (i ? "; " : "") + t.warnings[i];
    os << "trial," << t.index << ',' << t.seed << ',' << (t.ok ? 1 : 0) << ',' << csv_field(t.error) << ','
       << format_double(t.p) << ',' << format_double(t.cov) << ',' << t.n_total << ',' << t.n_adam << ','
       << t.n_burnin << ',' << t.n << ',' << t.m << ',' << format_double(t.ess_min) << ','
       << format_double(t.acceptance_rate) << ',' << csv_field(w) << "\r\n";
  }
  // Aggregate row: p is E[p], cov the sampling C.o.V, n_total E[N_Total].
  os << "aggregate,," << s.seed_base << ',' << (s.reps - s.failed) << ",," << format_double(s.mean_p) << ','
     << format_double(s.sampling_cov) << ',' << format_double(s.mean_n_total) << ",,,,,,"
     << format_double(s.mean_analytical_cov) << ",\r\n";
  return os.str();
}

ReportPaths emit_report(const TrialSummary& s, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ReportError("report: cannot create " + dir + ": " + ec.message());
  const std::string stem = (fs::path(dir) / (s.problem + "_" + s.estimator)).string();
  ReportPaths paths{stem + ".json", stem + ".csv"};
  auto write = [](const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ReportError("report: cannot write " + path);
    out << body;
    if (!out) throw ReportError("report: write failed for " + path);
  };
  char stamp[32] = "";
  const std::time_t now = std::time(nullptr);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  write(paths.json, to_json(s, stamp) + "\n");
  write(paths.csv, to_csv(s));
  return paths;
}

}  // namespace astpa::bench
