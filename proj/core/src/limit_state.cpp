#include "astpa/limit_state.hpp"

#include <cmath>

namespace astpa {
namespace {

void check(const Vector& x, std::size_t d, const char* what) {
  require_dimension(x, d, what);
  require_finite(x, what);
}

}  // namespace

std::string to_string(LimitStateFamily f) {
  switch (f) {
    case LimitStateFamily::kQuadraticGumbel: return "quadratic-gumbel";
    case LimitStateFamily::kLinearRosenbrock: return "linear-rosenbrock";
    case LimitStateFamily::kHyperspherical: return "hyperspherical";
    case LimitStateFamily::kOcticLognormal: return "octic-lognormal";
    case LimitStateFamily::kRingQuadratic: return "ring-quadratic";
    case LimitStateFamily::kLinear: return "linear";
  }
  return "unknown";
}

QuadraticGumbelLimitState::QuadraticGumbelLimitState(std::size_t d, double lambda, std::size_t gamma)
    : d_(d), lambda_(lambda), gamma_(gamma) {
  if (d == 0 || gamma < 1 || gamma > d) throw InvalidInput("QuadraticGumbelLimitState: need 1 <= gamma <= d");
}

LimitStateValue QuadraticGumbelLimitState::evaluate(const Vector& x) const {
  check(x, d_, "QuadraticGumbelLimitState");
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d_));
  double t = x[0];
  for (std::size_t j = 1; j < gamma_; ++j) t -= x[j];
  LimitStateValue r;
  r.g = lambda_ - x.sum() * inv_sqrt_d + 2.5 * t * t;
  r.grad = Vector::Constant(d_, -inv_sqrt_d);
  r.grad[0] += 5.0 * t;
  for (std::size_t j = 1; j < gamma_; ++j) r.grad[j] -= 5.0 * t;
  return r;
}

LinearRosenbrockLimitState::LinearRosenbrockLimitState(std::size_t d, double threshold) : d_(d), threshold_(threshold) {
  if (d < 1) throw InvalidInput("LinearRosenbrockLimitState: d must be positive");
}

double LinearRosenbrockLimitState::value(const Vector& x) const {
  check(x, d_, "LinearRosenbrockLimitState");
  return threshold_ - 2.0 * x[0] - x.sum();
}

LimitStateValue LinearRosenbrockLimitState::evaluate(const Vector& x) const {
  LimitStateValue r;
  r.g = value(x);
  r.grad = Vector::Constant(d_, -1.0);
  r.grad[0] = -3.0;
  return r;
}

HypersphericalLimitState::HypersphericalLimitState(std::size_t d, double radius, double shift)
    : d_(d), radius_(radius), shift_(shift) {
  if (d < 1 || !(radius > 0.0)) throw InvalidInput("HypersphericalLimitState: bad parameters");
}

double HypersphericalLimitState::value(const Vector& x) const {
  check(x, d_, "HypersphericalLimitState");
  const double last = x[d_ - 1] + shift_;
  return x.head(d_ - 1).squaredNorm() + last * last - radius_ * radius_;
}

LimitStateValue HypersphericalLimitState::evaluate(const Vector& x) const {
  LimitStateValue r;
  r.g = value(x);
  r.grad = 2.0 * x;
  r.grad[d_ - 1] = 2.0 * (x[d_ - 1] + shift_);
  return r;
}

OcticLimitState::OcticLimitState(std::size_t d, double y0) : d_(d), y0_(y0) {
  if (d < 17) throw InvalidInput("OcticLimitState: need d >= 17");
}

LimitStateValue OcticLimitState::evaluate(const Vector& x) const {
  check(x, d_, "OcticLimitState");
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d_));
  const double t2 = x[0] - x.segment(1, 9).sum();
  const double t4 = x[10] - x.segment(11, 3).sum();
  const double t8 = x[14] - x[15] - x[16];
  LimitStateValue r;
  r.g = y0_ - x.sum() * inv_sqrt_d + 2.5 * t2 * t2 + std::pow(t4, 4) + std::pow(t8, 8);
  r.grad = Vector::Constant(d_, -inv_sqrt_d);
  const double d2 = 5.0 * t2;
  const double d4 = 4.0 * std::pow(t4, 3);
  const double d8 = 8.0 * std::pow(t8, 7);
  r.grad[0] += d2;
  r.grad.segment(1, 9).array() -= d2;
  r.grad[10] += d4;
  r.grad.segment(11, 3).array() -= d4;
  r.grad[14] += d8;
  r.grad[15] -= d8;
  r.grad[16] -= d8;
  return r;
}

RingQuadraticLimitState::RingQuadraticLimitState(std::size_t d, double radius) : d_(d), radius_(radius) {
  if (d < 1 || !(radius > 0.0)) throw InvalidInput("RingQuadraticLimitState: bad parameters");
}

LimitStateValue RingQuadraticLimitState::evaluate(const Vector& x) const {
  check(x, d_, "RingQuadraticLimitState");
  const double first = x[0] - 2.0;
  LimitStateValue r;
  r.g = radius_ * radius_ - first * first - x.tail(d_ - 1).squaredNorm();
  r.grad = -2.0 * x;
  r.grad[0] = -2.0 * first;
  return r;
}

LinearLimitState::LinearLimitState(Vector a, double b) : a_(std::move(a)), b_(b) {
  if (a_.size() == 0 || !a_.allFinite() || !std::isfinite(b)) throw InvalidInput("LinearLimitState: bad parameters");
}

double LinearLimitState::value(const Vector& x) const {
  check(x, a_.size(), "LinearLimitState");
  return b_ - a_.dot(x);
}

LimitStateValue LinearLimitState::evaluate(const Vector& x) const { return {value(x), -a_}; }

LimitStateProblem::LimitStateProblem(LimitStatePtr fn) : fn_(std::move(fn)) {
  if (!fn_) throw InvalidInput("LimitStateProblem: null limit-state function");
}

LimitStateProblem::LimitStateProblem(const LimitStateProblem& other) : fn_(other.fn_), calls_(other.calls()) {}

void LimitStateProblem::remember(const Vector& x, double g) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  last_x_ = x;
  last_g_ = g;
}

LimitStateValue LimitStateProblem::evaluate(const Vector& x) const {
  LimitStateValue r = fn_->evaluate(x);
  calls_.fetch_add(1, std::memory_order_relaxed);
  remember(x, r.g);
  return r;
}

double LimitStateProblem::value(const Vector& x) const {
  const double g = fn_->value(x);
  calls_.fetch_add(1, std::memory_order_relaxed);
  return g;
}

int LimitStateProblem::indicator(const Vector& x) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (last_x_.size() == x.size() && last_x_ == x) return astpa::indicator(last_g_);
  }
  return astpa::indicator(evaluate(x).g);
}

}  // namespace astpa
