#include "astpa/bench/registry.hpp"

#include <cstdlib>
#include <memory>

#ifndef ASTPA_DEFAULT_DATA_DIR
#define ASTPA_DEFAULT_DATA_DIR "data"
#endif

namespace astpa::bench {

std::string to_string(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::kAstpaQnp: return "astpa-qnp";
    case EstimatorKind::kAstpaHmc: return "astpa-hmc";
    case EstimatorKind::kSus: return "sus";
    case EstimatorKind::kMc: return "mc";
  }
  return "unknown";
}

EstimatorKind parse_estimator(const std::string& s) {
  if (s == "astpa-qnp") return EstimatorKind::kAstpaQnp;
  if (s == "astpa-hmc") return EstimatorKind::kAstpaHmc;
  if (s == "sus") return EstimatorKind::kSus;
  if (s == "mc") return EstimatorKind::kMc;
  throw InvalidInput("unknown estimator '" + s + "' (expected astpa-qnp, astpa-hmc, sus or mc)");
}

std::string data_dir() {
  if (const char* env = std::getenv("ASTPA_DATA_DIR"); env && *env) return env;
  return ASTPA_DEFAULT_DATA_DIR;
}

namespace {

constexpr double kCopulaRho = 0.9528;

BenchmarkSpec gumbel(std::size_t d, double lambda, std::size_t gamma, std::size_t n_qnp, std::size_t n_hmc,
                     Reference ref, std::size_t sus_n) {
  BenchmarkSpec s;
  s.id = "ex1-d" + std::to_string(d);
  s.description = "Gaussian-copula Gumbel marginals, quadratic limit state (d=" + std::to_string(d) + ")";
  auto model = std::make_shared<GaussianCopulaGumbel>(d, 10.0, 0.4, kCopulaRho);
  auto ls = std::make_shared<QuadraticGumbelLimitState>(d, lambda, gamma);
  s.make = [model, ls, d] {
    ProblemSetup p;
    p.name = "gumbel";
    p.model = model;
    p.limit_state = ls;
    p.mean = Vector::Constant(d, 10.0);
    return p;
  };
  s.params = {0.1, 20.0, 0.1};
  s.n_total_qnp = n_qnp;
  s.n_total_hmc = n_hmc;
  s.sus_n = sus_n;
  s.sus_space = SusSpaceKind::kStandardNormal;
  s.from_standard_normal = [model](const Vector& u) { return model->from_standard_normal(u); };
  s.reference = ref;
  return s;
}

BenchmarkSpec rosenbrock(std::size_t d, double a, double b, double mu, std::size_t n_qnp, std::size_t n_hmc,
                         Reference ref, std::size_t sus_n) {
  BenchmarkSpec s;
  s.id = "ex2-d" + std::to_string(d);
  s.description = "Rosenbrock density, linear limit state (d=" + std::to_string(d) + ")";
  auto model = std::make_shared<Rosenbrock>(d, a, b, mu);
  auto ls = std::make_shared<LinearRosenbrockLimitState>(d, 250.0);
  s.make = [model, ls] {
    ProblemSetup p;
    p.name = "rosenbrock";
    p.model = model;
    p.limit_state = ls;
    p.mean = *model->mean();
    return p;
  };
  s.params = {0.1, 20.0, 0.1};
  s.n_total_qnp = n_qnp;
  s.n_total_hmc = n_hmc;
  s.adam_iterations = 1500;
  // At 10 almost every secant pair along the curved valley is rejected and
  // the chain cannot travel from the discovery point to the failure domain.
  s.curvature_threshold = 3.0;
  s.sus_n = sus_n;
  s.reference = ref;
  return s;
}

std::string radius_tag(double r) {
  std::string t = std::to_string(r);
  t.erase(t.find_last_not_of('0') + 1);
  if (!t.empty() && t.back() == '.') t.pop_back();
  return t;
}

BenchmarkSpec funnel(std::size_t d, double r, std::size_t n_qnp, std::size_t n_hmc, Reference ref, std::size_t sus_n) {
  BenchmarkSpec s;
  s.id = "ex3-d" + std::to_string(d) + "-r" + radius_tag(r);
  s.description = "Neal funnel, hyperspherical limit state (d=" + std::to_string(d) + ", r=" + radius_tag(r) + ")";
  auto model = std::make_shared<NealFunnel>(d);
  auto ls = std::make_shared<HypersphericalLimitState>(d, r);
  s.make = [model, ls, d] {
    ProblemSetup p;
    p.name = "funnel";
    p.model = model;
    p.limit_state = ls;
    p.mean = Vector::Zero(d);
    return p;
  };
  s.params = {0.1, 20.0, 0.1};
  s.n_total_qnp = n_qnp;
  s.n_total_hmc = n_hmc;
  // Discovery ends in the funnel neck; a full W keeps the neck's scales and
  // never relaxes within the burn-in.
  s.diagonal = d >= 20;
  s.sus_n = sus_n;
  s.reference = ref;
  return s;
}

BenchmarkSpec lognormal(double y0, std::size_t n_qnp, std::size_t n_hmc, Reference ref, std::size_t sus_n) {
  constexpr std::size_t d = 200;
  BenchmarkSpec s;
  s.id = "ex4-Y" + radius_tag(y0);
  s.description = "200 lognormal variables, octic limit state (Y0=" + radius_tag(y0) + ")";
  auto model = std::make_shared<IndependentLognormal>(d, 1.0, 1.0);
  auto ls = std::make_shared<OcticLimitState>(d, y0);
  s.make = [model, ls] {
    ProblemSetup p;
    p.name = "lognormal";
    p.model = model;
    p.limit_state = ls;
    p.spec = BoundSpec::uniform(d, Bound::lower_at(0.0));
    p.mean = Vector::Ones(d);
    return p;
  };
  s.params = {0.2, 10.0, 0.1};
  s.n_total_qnp = n_qnp;
  s.n_total_hmc = n_hmc;
  s.diagonal = true;
  s.sus_n = sus_n;
  s.sus_space = SusSpaceKind::kStandardNormal;
  s.from_standard_normal = [model](const Vector& u) {
    return Vector((model->log_mu() + model->log_sigma() * u.array()).exp());
  };
  s.reference = ref;
  return s;
}

BenchmarkSpec ring(std::size_t d, double r, std::size_t n_total, Reference ref, std::size_t sus_n) {
  BenchmarkSpec s;
  s.id = "ex5-d" + std::to_string(d) + "-r" + radius_tag(r);
  s.description = "Ring-shaped posterior, quadratic limit state (d=" + std::to_string(d) + ", r=" + radius_tag(r) + ")";
  s.make = [d, r] {
    ProblemSetup p;
    p.name = "ring";
    p.model = std::make_shared<RingPosterior>(d, load_observations(data_dir() + "/ring_y.txt"), 4.0);
    p.limit_state = std::make_shared<RingQuadraticLimitState>(d, r);
    p.mean = Vector::Zero(d);
    return p;
  };
  s.params = {0.3, 10.0, 0.1};
  s.n_total_qnp = n_total;
  s.n_total_hmc = n_total;
  s.diagonal = d > 150;
  s.unnormalized = true;
  if (d >= 500) s.c_pi = {15000, 5000, 0.1, 1};
  s.sus_n = sus_n;
  s.reference = ref;
  return s;
}

std::vector<BenchmarkSpec> build_registry() {
  std::vector<BenchmarkSpec> r;
  r.push_back(gumbel(2, 70.0, 2, 4048, 5348, {2.51e-7, 2.43e-7, 2.37e-7}, 5000));
  r.push_back(gumbel(3, 5.0, 3, 4598, 8598, {4.17e-7, 4.19e-7, 4.18e-7}, 5000));
  r.push_back(gumbel(40, -200.0, 20, 5298, 13298, {4.60e-6, 4.60e-6, 4.56e-6}, 5000));
  r.push_back(rosenbrock(2, 0.05, 5.0, 1.0, 3848, 1020000, {1.15e-5, 1.10e-5, 0.67e-5}, 100000));
  r.push_back(rosenbrock(3, 1.0, 5.0, 0.5, 4948, 1020000, {1.00e-6, 0.87e-6, 0.20e-6}, 150000));
  r.push_back(funnel(2, 2.0, 1213, 1213, {3.11e-5, 3.09e-5, 3.09e-5}, 1000));
  r.push_back(funnel(31, 2.0, 3213, 3213, {1.87e-5, 1.84e-5, 1.83e-5}, 4000));
  r.push_back(funnel(51, 2.0, 4313, 4313, {1.37e-5, 1.33e-5, 1.34e-5}, 4000));
  r.push_back(funnel(51, 1.0, 4840, 4840, {1.28e-7, 1.28e-7, 1.26e-7}, 5000));
  r.push_back(funnel(101, 2.0, 7813, 14313, {6.82e-6, 6.55e-6, 6.55e-6}, 5000));
  r.push_back(lognormal(15.0, 8812, 30312, {2.22e-5, 2.20e-5, 2.22e-5}, 3000));
  r.push_back(lognormal(16.0, 11833, 30333, {3.54e-6, 3.62e-6, 3.69e-6}, 5000));
  r.push_back(ring(2, 3.8, 1639, {3.38e-5, 3.45e-5, 3.48e-5}, 2000));
  r.push_back(ring(50, 3.4, 3156, {2.32e-5, 2.29e-5, 2.36e-5}, 4000));
  r.push_back(ring(150, 3.4, 5056, {6.78e-5, 6.85e-5, 6.91e-5}, 4000));
  r.push_back(ring(150, 3.6, 4998, {0.0, 1.69e-8, 1.65e-8}, 5000));
  r.push_back(ring(500, 3.6, 6597, {2.90e-3, 2.88e-3, 2.89e-3}, 4000));
  r.push_back(ring(500, 3.8, 6639, {0.0, 1.00e-7, 0.99e-7}, 5000));
  return r;
}

}  // namespace

const std::vector<BenchmarkSpec>& registry() {
  static const std::vector<BenchmarkSpec> r = build_registry();
  return r;
}

const BenchmarkSpec& find_benchmark(const std::string& id) {
  for (const auto& s : registry()) {
    if (s.id == id) return s;
  }
  std::string known;
  for (const auto& s : registry()) known += (known.empty() ? "" : ", ") + s.id;
  throw InvalidInput("unknown problem '" + id + "'; known problems: " + known);
}

}  // namespace astpa::bench
