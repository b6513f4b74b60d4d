#pragma once

#include <cstddef>
#include <span>

#include "sosmap/map_core.hpp"

namespace sosmap {

// Slack allowed on each inequality of the set I, to absorb rounding at y = psi(x).
inline constexpr double kMembershipTolerance = 1e-9;

// The region
//
//   I = { 0 <= x <= a,  max(0, psi(x) - a) <= y <= psi(x) },
//   psi(x) = coeff0 h x^k + tau x,
//
// claimed to be F-invariant when 2 < tau <= 1 + k^(k/(k-1)) / (k-1).
struct InvariantSetSpec {
  int k = 2;
  double tau = 0.0;
  double h = 1.0;
  double coeff0 = 0.0;
  double a = 0.0;
  double x_hat = 0.0;       // maximiser of psi
  double x_hat0 = 0.0;      // positive root of psi
  double x_star_max = 0.0;  // maximiser of psi(x) - x
  double tau_upper = 0.0;   // 1 + k^(k/(k-1)) / (k-1)
  bool condition_ok = false;

  double psi(double x) const noexcept;
};

InvariantSetSpec invariant_set(const ModelParams& p);

bool contains(const InvariantSetSpec& spec, State s);

// Smallest slack among the four inequalities; negative means outside.
double membership_margin(const InvariantSetSpec& spec, State s) noexcept;

struct InvarianceCheck {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;
  State worst_point;
};

InvarianceCheck verify_invariance(const InvariantSetSpec& spec, const ModelParams& p, std::size_t grid_n);

// The coordinate swap l(x, y) = (y, x).
inline State swap_coordinates(State s) noexcept { return {s.y, s.x}; }

// max over samples of |F(s) - (l o F^-1 o l)(s)|.
double conjugacy_residual(const ModelParams& p, std::span<const State> samples);

}  // namespace sosmap
