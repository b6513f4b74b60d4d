#include "sosmap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sosmap/error.hpp"

namespace sosmap {

double InvariantSetSpec::psi(double x) const noexcept { return coeff0 * h * ipow(x, k) + tau * x; }

InvariantSetSpec invariant_set(const ModelParams& p) {
  const auto h = p.constant_weight();
  if (!h) throw Error(ErrorCode::NotConstantField, "the invariant set needs a constant field");

  InvariantSetSpec s;
  s.k = p.k();
  s.tau = p.tau();
  s.h = *h;
  s.coeff0 = p.coeff0();

  const double inv = 1.0 / (s.k - 1);
  const double scale = s.h * (s.tau - p.y0() - p.x1());
  s.a = std::pow((s.tau - 1.0) / scale, inv);
  s.x_hat0 = std::pow(s.tau / scale, inv);
  s.x_hat = s.x_hat0 * std::pow(1.0 / s.k, inv);
  s.x_star_max = std::pow((s.tau - 1.0) / (s.k * scale), inv);
  s.tau_upper = 1.0 + std::pow(static_cast<double>(s.k), s.k * inv) * inv;
  s.condition_ok = s.tau > 2.0 && s.tau <= s.tau_upper;
  return s;
}

double membership_margin(const InvariantSetSpec& spec, State s) noexcept {
  const double ps = spec.psi(s.x);
  const double lower = std::max(0.0, ps - spec.a);
  return std::min({s.x, spec.a - s.x, s.y - lower, ps - s.y});
}

bool contains(const InvariantSetSpec& spec, State s) {
  if (!spec.condition_ok) {
    throw Error(ErrorCode::ConditionNotSatisfied, "tau is outside the range where I is invariant");
  }
  return membership_margin(spec, s) >= -kMembershipTolerance;
}

InvarianceCheck verify_invariance(const InvariantSetSpec& spec, const ModelParams& p, std::size_t grid_n) {
  if (!spec.condition_ok) {
    throw Error(ErrorCode::ConditionNotSatisfied, "tau is outside the range where I is invariant");
  }
  if (grid_n < 2) throw Error(ErrorCode::InvalidArgument, "grid_n must be at least 2");

  InvarianceCheck out;
  out.worst_margin = std::numeric_limits<double>::infinity();
  const double last = static_cast<double>(grid_n - 1);
  for (std::size_t i = 0; i < grid_n; ++i) {
    const double x = spec.a * (static_cast<double>(i) / last);
    const double top = spec.psi(x);
    const double bottom = std::max(0.0, top - spec.a);
    for (std::size_t j = 0; j < grid_n; ++j) {
      const double y = bottom + (top - bottom) * (static_cast<double>(j) / last);
      const State image = advance(p, {x, y}, 1);
      const double m = membership_margin(spec, image);
      ++out.samples;
      if (m < -kMembershipTolerance) ++out.violations;
      if (m < out.worst_margin) {
        out.worst_margin = m;
        out.worst_point = {x, y};
      }
    }
  }
  return out;
}

double conjugacy_residual(const ModelParams& p, std::span<const State> samples) {
  if (!p.constant_weight()) throw Error(ErrorCode::NotConstantField, "conjugacy needs a constant field");
  double worst = 0.0;
  for (const State& s : samples) {
    const State lhs = advance(p, s, 1);
    const State rhs = swap_coordinates(retreat(p, swap_coordinates(s), 1));
    worst = std::max(worst, std::hypot(lhs.x - rhs.x, lhs.y - rhs.y));
  }
  return worst;
}

}  // namespace sosmap
