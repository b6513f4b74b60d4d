#include "sosmap/map_core.hpp"

#include <cmath>
#include <sstream>

#include "sosmap/error.hpp"

namespace sosmap {

namespace {

void require_finite(State s) {
  if (!std::isfinite(s.x) || !std::isfinite(s.y)) {
    throw Error(ErrorCode::NonFiniteState, "state must be finite");
  }
}

State check_escape(State s) {
  if (!std::isfinite(s.x) || !std::isfinite(s.y) || std::abs(s.x) > kEscapeBound ||
      std::abs(s.y) > kEscapeBound) {
    std::ostringstream os;
    os.precision(17);
    os << "image (" << s.x << ", " << s.y << ") exceeds escape bound " << kEscapeBound;
    throw Error(ErrorCode::Overflow, os.str());
  }
  return s;
}

}  // namespace

double theta_from_tau(double tau) {
  if (!(tau > 2.0) || !std::isfinite(tau)) throw Error(ErrorCode::InvalidTau, "tau must exceed 2");
  // Smaller root of theta^2 - tau theta + 1 = 0, in the cancellation-free form.
  return 2.0 / (tau + std::sqrt((tau - 2.0) * (tau + 2.0)));
}

double tau_from_theta(double theta) {
  if (!(theta > 0.0) || theta == 1.0 || !std::isfinite(theta)) {
    throw Error(ErrorCode::InvalidTau, "theta must be positive and different from 1");
  }
  return theta + 1.0 / theta;
}

double ipow(double x, int k) noexcept {
  double r = x;
  for (int i = 1; i < k; ++i) r *= x;
  return r;
}

double ModelParams::weight(long n) const { return n == 0 ? 1.0 : field_.value(n); }

ModelParams make_params(int k, double tau, Field field, double y0, double x1) {
  if (k < 2) throw Error(ErrorCode::InvalidOrder, "tree order k must be at least 2");
  if (!(tau > 2.0) || !std::isfinite(tau)) throw Error(ErrorCode::InvalidTau, "tau must exceed 2");
  if (!(y0 > 0.0) || !(x1 > 0.0) || !std::isfinite(y0) || !std::isfinite(x1)) {
    throw Error(ErrorCode::NonpositiveInitial, "y0 and x1 must be positive");
  }
  if (!(y0 + x1 < tau)) {
    throw Error(ErrorCode::InitialConditionViolated, "initial data must satisfy y0 + x1 < tau");
  }
  ModelParams p;
  p.k_ = k;
  p.tau_ = tau;
  p.theta_ = theta_from_tau(tau);
  p.field_ = std::move(field);
  p.y0_ = y0;
  p.x1_ = x1;
  p.coeff0_ = y0 + x1 - tau;
  return p;
}

State advance(const ModelParams& p, State s, long n) noexcept {
  return {p.coeff0() * p.weight(n) * ipow(s.x, p.k()) + p.tau() * s.x - s.y, s.x};
}

State retreat(const ModelParams& p, State s, long n) noexcept {
  return {s.y, p.coeff0() * p.weight(n) * ipow(s.y, p.k()) + p.tau() * s.y - s.x};
}

State step_forward(const ModelParams& p, State s, long n) {
  require_finite(s);
  return check_escape(advance(p, s, n));
}

State step_backward(const ModelParams& p, State s, long n) {
  require_finite(s);
  return check_escape(retreat(p, s, n));
}

Trajectory iterate(const ModelParams& p, std::size_t n_steps) {
  Trajectory t;
  t.points.reserve(n_steps + 1);
  State s{p.x1(), 1.0};
  t.points.push_back(s);
  t.max_abs = std::abs(s.x);
  if (s.x <= 0.0) t.first_nonpositive = 0;

  for (std::size_t m = 1; m <= n_steps; ++m) {
    // The state (x_m, y_m) advances with h(m).
    s = advance(p, s, static_cast<long>(m));
    t.points.push_back(s);
    if (!std::isfinite(s.x) || std::abs(s.x) > kEscapeBound) {
      t.escaped_at = m;
      t.max_abs = std::isfinite(s.x) ? std::max(t.max_abs, std::abs(s.x)) : HUGE_VAL;
      if (!t.first_nonpositive && !(s.x > 0.0)) t.first_nonpositive = m;
      break;
    }
    t.max_abs = std::max(t.max_abs, std::abs(s.x));
    if (!t.first_nonpositive && s.x <= 0.0) t.first_nonpositive = m;
  }
  return t;
}

BoundednessStats boundedness_stats(const Trajectory& t) {
  if (t.points.empty()) throw Error(ErrorCode::InvalidArgument, "empty trajectory");
  BoundednessStats b;
  for (const auto& s : t.points) b.max_abs = std::max(b.max_abs, std::abs(s.x));
  b.is_positive = !t.first_nonpositive.has_value();
  b.is_bounded = !t.escaped_at.has_value();
  return b;
}

std::optional<std::size_t> positivity_horizon(const ModelParams& p, std::size_t n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 1");
  const Trajectory t = iterate(p, n_max);
  if (t.first_nonpositive) return t.first_nonpositive;
  return t.escaped_at;
}

}  // namespace sosmap
