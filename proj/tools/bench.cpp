// Command-line front end to the problem registry and verification suites.
#include "astpa/bench/registry.hpp"
#include "astpa/bench/report.hpp"
#include "astpa/bench/runner.hpp"
#include "astpa/bench/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

namespace {

using namespace astpa::bench;

// key = value lines; '#' starts a comment. Values override command-line flags.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw astpa::InvalidInput("cannot read config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw astpa::InvalidInput(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

struct RunArgs {
  std::string problem;
  std::string estimator = "astpa-qnp";
  std::size_t reps = 100;
  std::uint64_t seed = 1;
  std::string out;
  std::size_t threads = 1;
  std::string config;
  std::optional<double> sigma, q;
  std::optional<std::size_t> n_total, n, burnin, m;
  std::optional<bool> diag_mass;
};

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw astpa::InvalidInput("expected a boolean, got '" + v + "'");
}

void apply_config(RunArgs& a) {
  for (const auto& [key, value] : read_config(a.config)) {
    try {
      if (key == "problem") a.problem = value;
      else if (key == "estimator") a.estimator = value;
      else if (key == "reps") a.reps = std::stoull(value);
      else if (key == "seed") a.seed = std::stoull(value);
      else if (key == "out") a.out = value;
      else if (key == "threads") a.threads = std::stoull(value);
      else if (key == "sigma") a.sigma = std::stod(value);
      else if (key == "q") a.q = std::stod(value);
      else if (key == "n-total") a.n_total = std::stoull(value);
      else if (key == "n") a.n = std::stoull(value);
      else if (key == "burnin") a.burnin = std::stoull(value);
      else if (key == "m") a.m = std::stoull(value);
      else if (key == "diag-mass") a.diag_mass = parse_bool(value);
      else throw astpa::InvalidInput("unknown config key '" + key + "'");
    } catch (const std::logic_error&) {
      throw astpa::InvalidInput("bad value for config key '" + key + "': " + value);
    }
  }
}

int cmd_run(RunArgs a) {
  if (!a.config.empty()) apply_config(a);
  if (a.problem.empty()) throw astpa::InvalidInput("--problem is required");
  if (a.out.empty()) {
    const char* env = std::getenv("ASTPA_BENCH_OUT");
    a.out = env && *env ? env : "bench_out";
  }
  RunRequest r;
  r.problem = a.problem;
  r.estimator = parse_estimator(a.estimator);
  r.reps = a.reps;
  r.seed = a.seed;
  r.threads = a.threads;
  r.sigma = a.sigma;
  r.q = a.q;
  r.n_total = a.n_total;
  r.n = a.n;
  r.n_burnin = a.burnin;
  r.m = a.m;
  r.diagonal_mass = a.diag_mass;
  const TrialSummary s = run_benchmark(r);
  const ReportPaths paths = emit_report(s, a.out);
  std::printf("%s %s reps=%zu failed=%zu\n", s.problem.c_str(), s.estimator.c_str(), s.reps, s.failed);
  std::printf("  E[N_Total]=%.0f  sampling C.o.V=%.3f  E[p]=%.4g  E[analytical C.o.V]=%.3f  reference=%.3g\n",
              s.mean_n_total, s.sampling_cov, s.mean_p, s.mean_analytical_cov, s.reference_p);
  std::printf("  wrote %s\n  wrote %s\n", paths.json.c_str(), paths.csv.c_str());
  return 0;
}

int cmd_list() {
  std::printf("%-16s %6s %6s %8s %8s %10s  %s\n", "id", "sigma", "q", "N_QNp", "N_HMC", "MC p", "description");
  for (const auto& s : registry()) {
    std::printf("%-16s %6.2f %6.1f %8zu %8zu %10.3g  %s\n", s.id.c_str(), s.params.sigma, s.params.q, s.n_total_qnp,
                s.n_total_hmc, s.reference.monte_carlo_p, s.description.c_str());
  }
  return 0;
}

int cmd_verify(const std::string& suite, const VerifyOptions& o) {
  int failed = 0;
  run_suite(parse_suite(suite), o, [&](const CheckResult& r) {
    std::printf("[%s] %2d %s: %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  });
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rare-event benchmark driver"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Run repeated trials of one problem and write JSON and CSV reports");
  run->add_option("--problem", ra.problem, "Problem id (see `bench list`)");
  run->add_option("--estimator", ra.estimator, "astpa-qnp | astpa-hmc | sus | mc")->capture_default_str();
  run->add_option("--reps", ra.reps, "Independent repetitions")->capture_default_str();
  run->add_option("--seed", ra.seed, "Seed base; trial i uses seed + i")->capture_default_str();
  run->add_option("--out", ra.out, "Output directory (default $ASTPA_BENCH_OUT or ./bench_out)");
  run->add_option("--threads", ra.threads, "Worker threads")->capture_default_str();
  run->add_option("--sigma", ra.sigma, "Override sigma");
  run->add_option("--q", ra.q, "Override q");
  run->add_option("--n-total", ra.n_total, "Total budget (MC: samples, SuS: samples per level)");
  run->add_option("--n", ra.n, "Post-burn-in samples");
  run->add_option("--burnin", ra.burnin, "Burn-in samples");
  run->add_option("--m", ra.m, "IIS samples");
  run->add_option("--diag-mass", ra.diag_mass, "Use a diagonal mass matrix (true/false)");
  run->add_option("--config", ra.config, "key = value file; its entries override flags")->check(CLI::ExistingFile);

  app.add_subcommand("list", "List registered problems");

  std::string suite = "properties";
  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run an acceptance suite");
  verify->add_option("--suite", suite, "properties | tables | all")->capture_default_str();
  verify->add_option("--reps", vo.reps, "Repetitions for table checks")->capture_default_str();
  verify->add_option("--seed", vo.seed)->capture_default_str();
  verify->add_option("--threads", vo.threads)->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(ra);
    if (app.got_subcommand("list")) return cmd_list();
    if (*verify) return cmd_verify(suite, vo);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "bench: %s\n", e.what());
    return 2;
  }
  return 0;
}
