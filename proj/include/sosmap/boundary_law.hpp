#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sosmap/field.hpp"
#include "sosmap/series.hpp"

namespace sosmap {

enum class LawKind { LeftInfinite, RightInfinite, BothInfinite, Custom };

std::string_view to_string(LawKind v) noexcept;

// Which vector enters the cylinder measure: the simplified z_i (default) or
// the original boundary law z_i / h(i).
enum class LawCoordinates { Simplified, Original };

// Translation-invariant boundary law in simplified coordinates, z_0 = 1.
//
//   LeftInfinite:  z_i = (h(i)/h(0)) theta^(i k)
//   RightInfinite: z_i = (h(i)/h(0)) theta^(-i k)
//   BothInfinite:  z_i = (h(i)/h(0)) ((theta^i + theta^-i rho) / (1 + rho))^k
class BoundaryLaw {
 public:
  using Generator = std::function<double(long)>;

  static BoundaryLaw left_infinite(double theta, int k, Field field);
  static BoundaryLaw right_infinite(double theta, int k, Field field);
  static BoundaryLaw both_infinite(double theta, int k, Field field, double rho);
  // `log_z` returns ln z_i for every integer i.
  static BoundaryLaw custom(double theta, int k, Field field, Generator log_z);

  LawKind kind() const noexcept { return kind_; }
  double theta() const noexcept { return theta_; }
  int k() const noexcept { return k_; }
  const Field& field() const noexcept { return field_; }
  double rho() const noexcept { return rho_; }

  double log_z(long i) const;
  double z(long i) const;

 private:
  BoundaryLaw(LawKind kind, double theta, int k, Field field, double rho, Generator g);

  LawKind kind_;
  double theta_;
  int k_;
  Field field_;
  double rho_ = 0.0;
  Generator custom_;
};

// z_i, throwing Overflow when it is not representable.
double z_value(const BoundaryLaw& law, long i);

struct SplitDivergenceCheck {
  bool left_split_holds = false;
  std::optional<int> left_split_witness;  // smallest s
  std::vector<int> left_split_all;
  bool right_split_holds = false;
  std::optional<int> right_split_witness;  // smallest t
  std::vector<int> right_split_all;
};

// Scans s, t in {0..k} for divergence of
//   sum theta^(-j(k-2s-1)) h(-j)   and   sum theta^(j(k-2t+1)) h(j).
SplitDivergenceCheck split_divergence_check(const Field& field, double theta, int k);

// Truncated sums of the rho-consistency equation, in log form:
//   A_N(rho) = sum_{j=1}^N theta^j (theta^j + theta^-j rho)^k h(j)
//   B_N(rho) = sum_{j=1}^N theta^j (theta^-j + theta^j rho)^k h(-j)
double log_rho_numerator(const Field& field, double theta, int k, double rho, std::size_t n);
double log_rho_denominator(const Field& field, double theta, int k, double rho, std::size_t n);

// A_N(rho) / B_N(rho) - rho.
double rho_residual(const Field& field, double theta, int k, double rho, std::size_t trunc_n);

struct SolutionCheck {
  double residual = 0.0;        // |(h(i)/h(0)) R_N(i)^k - z_i| / z_i
  double ratio_estimate = 0.0;  // R_N(i)
};

// Truncated form of the boundary-law system at site i:
//   R_N(i) = (theta^|i| + sum_{0<|j|<=N} theta^|i-j| z_j) / (1 + sum_{0<|j|<=N} theta^|j| z_j)
SolutionCheck verify_solution_ratio(const BoundaryLaw& law, long i, std::size_t trunc_n);

// Richardson estimate 2 R_2N - R_N of the limit ratio, for diagnostics when
// R_N converges like 1/N.
SolutionCheck extrapolated_solution_ratio(const BoundaryLaw& law, long i, std::size_t trunc_n);

// theta^|i-j| (h(i) h(j))^(1/(k+1)).
double transfer_q(int k, double theta, const Field& field, long i, long j);
double log_transfer_q(int k, double theta, const Field& field, long i, long j);

// ln l(i) for the chosen coordinates.
double log_boundary_value(const BoundaryLaw& law, long i, LawCoordinates coords = LawCoordinates::Simplified);

// Verdict on sum_i (sum_j Q(i,j) l(j))^(k+1).
SeriesVerdict normalisability_check(const BoundaryLaw& law, std::size_t trunc_n,
                                    LawCoordinates coords = LawCoordinates::Simplified);

// Finite ball of the Cayley tree of order k: the root has k+1 neighbours and
// every other interior vertex k children. Vertices are numbered breadth first.
class CayleySubtree {
 public:
  CayleySubtree(int k, int depth);

  int k() const noexcept { return k_; }
  int depth() const noexcept { return depth_; }
  std::size_t vertex_count() const noexcept { return parent_.size(); }
  // -1 for the root.
  long parent(std::size_t v) const { return parent_.at(v); }
  int level(std::size_t v) const { return level_.at(v); }
  bool on_boundary(std::size_t v) const { return level_.at(v) == depth_; }
  std::span<const std::size_t> children(std::size_t v) const;

  static std::size_t expected_vertex_count(int k, int depth);

 private:
  int k_;
  int depth_;
  std::vector<long> parent_;
  std::vector<int> level_;
  std::vector<std::size_t> first_child_;
  std::vector<std::size_t> child_count_;
  std::vector<std::size_t> child_list_;
};

// ln of prod_{y in boundary} l(w_y) * prod_{edges} Q(w_b); `config` is indexed
// by vertex number and covers the whole subtree.
double cylinder_log_measure(const CayleySubtree& tree, const BoundaryLaw& law, std::span<const long> config,
                            LawCoordinates coords = LawCoordinates::Simplified);

}  // namespace sosmap
