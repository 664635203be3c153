#include "astpa/transforms.hpp"

#include "astpa/math.hpp"

#include <cmath>

namespace astpa {

Bound Bound::interval(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw InvalidInput("Bound::interval: need finite a < b");
  return {Kind::kInterval, a, b};
}

BoundSpec::BoundSpec(std::vector<Bound> bounds) : bounds_(std::move(bounds)) {
  for (const Bound& b : bounds_) {
    if (b.kind == Bound::Kind::kInterval && !(b.lower < b.upper)) throw InvalidInput("BoundSpec: empty interval");
  }
}

BoundSpec BoundSpec::uniform(std::size_t d, Bound b) { return BoundSpec(std::vector<Bound>(d, b)); }

bool BoundSpec::is_identity() const {
  for (const Bound& b : bounds_) {
    if (b.kind != Bound::Kind::kUnbounded) return false;
  }
  return true;
}

Vector BoundSpec::to_unbounded(const Vector& x) const {
  require_dimension(x, dimension(), "to_unbounded");
  require_finite(x, "to_unbounded");
  Vector y(x.size());
  for (std::size_t i = 0; i < dimension(); ++i) {
    const Bound& b = bounds_[i];
    switch (b.kind) {
      case Bound::Kind::kUnbounded: y[i] = x[i]; break;
      case Bound::Kind::kLower:
        if (!(x[i] > b.lower)) throw InvalidInput("to_unbounded: point outside lower bound");
        y[i] = std::log(x[i] - b.lower);
        break;
      case Bound::Kind::kUpper:
        if (!(x[i] < b.upper)) throw InvalidInput("to_unbounded: point outside upper bound");
        y[i] = std::log(b.upper - x[i]);
        break;
      case Bound::Kind::kInterval: {
        if (!(x[i] > b.lower && x[i] < b.upper)) throw InvalidInput("to_unbounded: point outside interval");
        const double lo = x[i] - b.lower;
        const double hi = b.upper - x[i];
        y[i] = std::log(lo) - std::log(hi);
        break;
      }
    }
  }
  return y;
}

Vector BoundSpec::to_bounded(const Vector& y) const {
  require_dimension(y, dimension(), "to_bounded");
  Vector x(y.size());
  for (std::size_t i = 0; i < dimension(); ++i) {
    const Bound& b = bounds_[i];
    switch (b.kind) {
      case Bound::Kind::kUnbounded: x[i] = y[i]; break;
      case Bound::Kind::kLower: x[i] = b.lower + std::exp(y[i]); break;
      case Bound::Kind::kUpper: x[i] = b.upper - std::exp(y[i]); break;
      case Bound::Kind::kInterval: x[i] = b.lower + (b.upper - b.lower) * sigmoid(y[i]); break;
    }
  }
  return x;
}

Vector BoundSpec::jacobian_diagonal(const Vector& y) const {
  require_dimension(y, dimension(), "jacobian_diagonal");
  Vector j(y.size());
  for (std::size_t i = 0; i < dimension(); ++i) {
    const Bound& b = bounds_[i];
    switch (b.kind) {
      case Bound::Kind::kUnbounded: j[i] = 1.0; break;
      case Bound::Kind::kLower: j[i] = std::exp(y[i]); break;
      case Bound::Kind::kUpper: j[i] = -std::exp(y[i]); break;
      case Bound::Kind::kInterval: {
        const double s = sigmoid(y[i]);
        j[i] = (b.upper - b.lower) * s * (1.0 - s);
        break;
      }
    }
  }
  return j;
}

double BoundSpec::log_abs_det_jacobian(const Vector& y) const {
  require_dimension(y, dimension(), "log_abs_det_jacobian");
  double s = 0.0;
  for (std::size_t i = 0; i < dimension(); ++i) {
    const Bound& b = bounds_[i];
    switch (b.kind) {
      case Bound::Kind::kUnbounded: break;
      case Bound::Kind::kLower:
      case Bound::Kind::kUpper: s += y[i]; break;
      case Bound::Kind::kInterval:
        s += std::log(b.upper - b.lower) - softplus(y[i]) - softplus(-y[i]);
        break;
    }
  }
  return s;
}

Vector BoundSpec::grad_log_abs_det_jacobian(const Vector& y) const {
  require_dimension(y, dimension(), "grad_log_abs_det_jacobian");
  Vector g(y.size());
  for (std::size_t i = 0; i < dimension(); ++i) {
    switch (bounds_[i].kind) {
      case Bound::Kind::kUnbounded: g[i] = 0.0; break;
      case Bound::Kind::kLower:
      case Bound::Kind::kUpper: g[i] = 1.0; break;
      case Bound::Kind::kInterval: g[i] = 1.0 - 2.0 * sigmoid(y[i]); break;
    }
  }
  return g;
}

PushforwardDensity::PushforwardDensity(BoundSpec spec, DensityPtr base) : spec_(std::move(spec)), base_(std::move(base)) {
  if (!base_) throw InvalidInput("PushforwardDensity: null base model");
  if (spec_.dimension() != base_->dimension()) throw InvalidInput("PushforwardDensity: dimension mismatch");
}

LogDensity PushforwardDensity::do_evaluate(const Vector& y) const {
  const Vector x = spec_.to_bounded(y);
  if (!x.allFinite()) return {-std::numeric_limits<double>::infinity(), Vector::Zero(y.size())};
  LogDensity base = base_->evaluate(x);
  if (!base.in_support()) return base;
  LogDensity r;
  r.value = base.value + spec_.log_abs_det_jacobian(y);
  r.grad = base.grad.cwiseProduct(spec_.jacobian_diagonal(y)) + spec_.grad_log_abs_det_jacobian(y);
  return r;
}

void PushforwardDensity::draw(Rng& rng, Vector& out) const {
  Vector x;
  base_->draw(rng, x);
  out = spec_.to_unbounded(x);
}

DensityPtr pushforward_log_density(const BoundSpec& spec, DensityPtr model) {
  if (!model) throw InvalidInput("pushforward_log_density: null model");
  if (spec.empty() || spec.is_identity()) {
    if (!spec.empty() && spec.dimension() != model->dimension()) {
      throw InvalidInput("pushforward_log_density: dimension mismatch");
    }
    return model;
  }
  return std::make_shared<PushforwardDensity>(spec, std::move(model));
}

}  // namespace astpa
