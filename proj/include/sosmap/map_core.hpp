#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sosmap/field.hpp"

namespace sosmap {

// |x| beyond this halts a trajectory; the recurrence overflows a few steps later.
inline constexpr double kEscapeBound = 1e12;

// A point of the planar map: x = u_n, y = u_{n-1}.
struct State {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

// Parameters of the recurrence
//
//   u_{n+1} = (u_{-1} + u_1 - tau) h(n) u_n^k + tau u_n - u_{n-1},   u_0 = 1,
//
// with y0 = u_{-1}, x1 = u_1. The coefficient y0 + x1 - tau must be negative.
class ModelParams {
 public:
  int k() const noexcept { return k_; }
  double tau() const noexcept { return tau_; }
  // Root of theta + 1/theta = tau lying in (0,1).
  double theta() const noexcept { return theta_; }
  const Field& field() const noexcept { return field_; }
  double y0() const noexcept { return y0_; }
  double x1() const noexcept { return x1_; }
  double coeff0() const noexcept { return coeff0_; }

  // h(n) as seen by the recurrence; h(0) is pinned to 1.
  double weight(long n) const;
  // Common h(n) for n >= 1 when the map F_n does not depend on n.
  std::optional<double> constant_weight() const { return field_.step_constant(); }

 private:
  friend ModelParams make_params(int k, double tau, Field field, double y0, double x1);
  ModelParams() : field_(Field::constant(1.0)) {}

  int k_ = 2;
  double tau_ = 0.0;
  double theta_ = 0.0;
  Field field_;
  double y0_ = 0.0;
  double x1_ = 0.0;
  double coeff0_ = 0.0;
};

ModelParams make_params(int k, double tau, Field field, double y0, double x1);

double theta_from_tau(double tau);
double tau_from_theta(double theta);

// x^k by repeated multiplication; keeps results identical across platforms.
double ipow(double x, int k) noexcept;

// One application of F_n; throws Overflow if the image leaves the escape bound.
State step_forward(const ModelParams& p, State s, long n);
// Inverse of F_n: (x, y) -> (y, coeff0 h(n) y^k + tau y - x).
State step_backward(const ModelParams& p, State s, long n);

// Unchecked versions used by the iteration loops.
State advance(const ModelParams& p, State s, long n) noexcept;
State retreat(const ModelParams& p, State s, long n) noexcept;

struct Trajectory {
  std::vector<State> points;
  std::optional<std::size_t> first_nonpositive;
  std::optional<std::size_t> escaped_at;
  double max_abs = 0.0;
};

// points[m] = F^m(x1, 1), using h(1), h(2), ... for successive steps.
Trajectory iterate(const ModelParams& p, std::size_t n_steps);

struct BoundednessStats {
  double max_abs = 0.0;
  bool is_positive = true;
  bool is_bounded = true;
};

BoundednessStats boundedness_stats(const Trajectory& t);

// First step with x <= 0, or nullopt when the orbit stays positive for n_max steps.
std::optional<std::size_t> positivity_horizon(const ModelParams& p, std::size_t n_max);

}  // namespace sosmap
