#include "sosmap/boundary_law.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "sosmap/error.hpp"

namespace sosmap {

namespace {

double log_add_exp(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  if (hi == -std::numeric_limits<double>::infinity()) return hi;
  return hi + std::log1p(std::exp(lo - hi));
}

void require_theta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw Error(ErrorCode::InvalidArgument, "theta must be positive");
  }
}

double absd(long v) { return static_cast<double>(std::labs(v)); }

}  // namespace

std::string_view to_string(LawKind v) noexcept {
  switch (v) {
    case LawKind::LeftInfinite: return "LeftInfinite";
    case LawKind::RightInfinite: return "RightInfinite";
    case LawKind::BothInfinite: return "BothInfinite";
    case LawKind::Custom: return "Custom";
  }
  return "?";
}

BoundaryLaw::BoundaryLaw(LawKind kind, double theta, int k, Field field, double rho, Generator g)
    : kind_(kind), theta_(theta), k_(k), field_(std::move(field)), rho_(rho), custom_(std::move(g)) {
  require_theta(theta);
  if (k < 2) throw Error(ErrorCode::InvalidOrder, "tree order k must be at least 2");
}

BoundaryLaw BoundaryLaw::left_infinite(double theta, int k, Field field) {
  return BoundaryLaw(LawKind::LeftInfinite, theta, k, std::move(field), 0.0, {});
}

BoundaryLaw BoundaryLaw::right_infinite(double theta, int k, Field field) {
  return BoundaryLaw(LawKind::RightInfinite, theta, k, std::move(field), 0.0, {});
}

BoundaryLaw BoundaryLaw::both_infinite(double theta, int k, Field field, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw Error(ErrorCode::InvalidArgument, "rho must be positive");
  return BoundaryLaw(LawKind::BothInfinite, theta, k, std::move(field), rho, {});
}

BoundaryLaw BoundaryLaw::custom(double theta, int k, Field field, Generator log_z) {
  if (!log_z) throw Error(ErrorCode::InvalidArgument, "custom law needs a generator");
  return BoundaryLaw(LawKind::Custom, theta, k, std::move(field), 0.0, std::move(log_z));
}

double BoundaryLaw::log_z(long i) const {
  if (kind_ == LawKind::Custom) return custom_(i);
  if (i == 0) return 0.0;
  const double log_theta = std::log(theta_);
  const double ii = static_cast<double>(i);
  const double log_hr = field_.log_value(i) - field_.log_value(0);
  switch (kind_) {
    case LawKind::LeftInfinite:
      return log_hr + ii * k_ * log_theta;
    case LawKind::RightInfinite:
      return log_hr - ii * k_ * log_theta;
    case LawKind::BothInfinite: {
      const double inner = log_add_exp(ii * log_theta, -ii * log_theta + std::log(rho_)) - std::log1p(rho_);
      return log_hr + k_ * inner;
    }
    case LawKind::Custom:
      break;
  }
  return 0.0;
}

double BoundaryLaw::z(long i) const { return std::exp(log_z(i)); }

double z_value(const BoundaryLaw& law, long i) {
  const double lz = law.log_z(i);
  const double v = std::exp(lz);
  if (!std::isfinite(lz) || !std::isfinite(v) || v == 0.0) {
    throw Error(ErrorCode::Overflow, "z_i is outside the double range; use log_z");
  }
  return v;
}

SplitDivergenceCheck split_divergence_check(const Field& field, double theta, int k) {
  SplitDivergenceCheck out;
  for (int s = 0; s <= k; ++s) {
    if (tail_series_verdict(field, theta, -(k - 2 * s - 1), Side::Left).diverges()) out.left_split_all.push_back(s);
  }
  for (int t = 0; t <= k; ++t) {
    if (tail_series_verdict(field, theta, k - 2 * t + 1, Side::Right).diverges()) out.right_split_all.push_back(t);
  }
  out.left_split_holds = !out.left_split_all.empty();
  out.right_split_holds = !out.right_split_all.empty();
  if (out.left_split_holds) out.left_split_witness = out.left_split_all.front();
  if (out.right_split_holds) out.right_split_witness = out.right_split_all.front();
  return out;
}

double log_rho_numerator(const Field& field, double theta, int k, double rho, std::size_t n) {
  const double lt = std::log(theta);
  const double lr = std::log(rho);
  std::vector<double> terms;
  terms.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    terms.push_back(jd * lt + k * log_add_exp(jd * lt, -jd * lt + lr) + field.log_value(static_cast<long>(j)));
  }
  return log_sum_exp(terms);
}

double log_rho_denominator(const Field& field, double theta, int k, double rho, std::size_t n) {
  const double lt = std::log(theta);
  const double lr = std::log(rho);
  std::vector<double> terms;
  terms.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    terms.push_back(jd * lt + k * log_add_exp(-jd * lt, jd * lt + lr) + field.log_value(-static_cast<long>(j)));
  }
  return log_sum_exp(terms);
}

double rho_residual(const Field& field, double theta, int k, double rho, std::size_t trunc_n) {
  require_theta(theta);
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "rho must be positive");
  if (trunc_n < 1) throw Error(ErrorCode::InvalidArgument, "trunc_n must be at least 1");
  const double log_b = log_rho_denominator(field, theta, k, rho, trunc_n);
  if (log_b < std::log(1e-300)) throw Error(ErrorCode::DenominatorUnderflow, "B_N(rho) underflows");
  const double log_a = log_rho_numerator(field, theta, k, rho, trunc_n);
  return std::exp(log_a - log_b) - rho;
}

namespace {

double log_ratio_n(const BoundaryLaw& law, long i, std::size_t n) {
  const double lt = std::log(law.theta());
  const long nn = static_cast<long>(n);
  std::vector<double> num;
  std::vector<double> den;
  num.reserve(2 * n + 1);
  den.reserve(2 * n + 1);
  num.push_back(absd(i) * lt);
  den.push_back(0.0);
  for (long j = -nn; j <= nn; ++j) {
    if (j == 0) continue;
    const double lz = law.log_z(j);
    num.push_back(absd(i - j) * lt + lz);
    den.push_back(absd(j) * lt + lz);
  }
  const double out = log_sum_exp(num) - log_sum_exp(den);
  if (!std::isfinite(out)) throw Error(ErrorCode::Overflow, "truncated ratio is not finite");
  return out;
}

SolutionCheck finish_check(const BoundaryLaw& law, long i, double ratio) {
  const auto& f = law.field();
  const double log_lhs = f.log_value(i) - f.log_value(0) + law.k() * std::log(ratio);
  return {std::abs(std::expm1(log_lhs - law.log_z(i))), ratio};
}

}  // namespace

SolutionCheck verify_solution_ratio(const BoundaryLaw& law, long i, std::size_t trunc_n) {
  if (trunc_n < 10) throw Error(ErrorCode::InvalidArgument, "trunc_n must be at least 10");
  return finish_check(law, i, std::exp(log_ratio_n(law, i, trunc_n)));
}

SolutionCheck extrapolated_solution_ratio(const BoundaryLaw& law, long i, std::size_t trunc_n) {
  if (trunc_n < 10) throw Error(ErrorCode::InvalidArgument, "trunc_n must be at least 10");
  const double r1 = std::exp(log_ratio_n(law, i, trunc_n));
  const double r2 = std::exp(log_ratio_n(law, i, 2 * trunc_n));
  const double limit = 2.0 * r2 - r1;
  if (!(limit > 0.0)) return {std::numeric_limits<double>::infinity(), limit};
  return finish_check(law, i, limit);
}

double transfer_q(int k, double theta, const Field& field, long i, long j) {
  return std::pow(theta, absd(i - j)) * std::pow(field.value(i) * field.value(j), 1.0 / (k + 1));
}

double log_transfer_q(int k, double theta, const Field& field, long i, long j) {
  return absd(i - j) * std::log(theta) + (field.log_value(i) + field.log_value(j)) / (k + 1);
}

double log_boundary_value(const BoundaryLaw& law, long i, LawCoordinates coords) {
  const double lz = law.log_z(i);
  return coords == LawCoordinates::Simplified ? lz : lz - law.field().log_value(i);
}

SeriesVerdict normalisability_check(const BoundaryLaw& law, std::size_t trunc_n, LawCoordinates coords) {
  if (trunc_n < 10) throw Error(ErrorCode::InvalidArgument, "trunc_n must be at least 10");
  const int k = law.k();
  const double theta = law.theta();
  const Field& f = law.field();
  auto inner_term = [&](long i, long j) {
    return log_transfer_q(k, theta, f, i, j) + log_boundary_value(law, j, coords);
  };

  // If sum_j Q(0,j) l(j) is infinite, every marginal is.
  HeuristicOptions inner_opt;
  inner_opt.max_terms = 4 * trunc_n;
  SeriesVerdict combined;
  combined.method = SeriesMethod::PartialSumHeuristic;
  for (Side side : {Side::Left, Side::Right}) {
    const long sign = side == Side::Left ? -1 : 1;
    const auto v = partial_sum_verdict([&](std::size_t j) { return inner_term(0, sign * static_cast<long>(j)); },
                                       inner_opt);
    combined.terms_used += v.terms_used;
    if (v.diverges()) {
      combined.status = SeriesStatus::Diverges;
      return combined;
    }
  }

  // The outer scan needs room for a full sustain run; the j-window covers it.
  HeuristicOptions outer_opt;
  outer_opt.max_terms = 2 * trunc_n + 2 * outer_opt.sustain;
  const long window = static_cast<long>(outer_opt.max_terms + 2 * trunc_n);
  auto outer_term = [&](long i) {
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(2 * window + 1));
    for (long j = -window; j <= window; ++j) terms.push_back(inner_term(i, j));
    return (k + 1) * log_sum_exp(terms);
  };

  double total = std::exp(outer_term(0));
  bool all_converge = true;
  for (Side side : {Side::Left, Side::Right}) {
    const long sign = side == Side::Left ? -1 : 1;
    const auto v = partial_sum_verdict([&](std::size_t i) { return outer_term(sign * static_cast<long>(i)); },
                                       outer_opt);
    combined.terms_used += v.terms_used;
    if (v.diverges()) {
      combined.status = SeriesStatus::Diverges;
      return combined;
    }
    if (!v.converges()) all_converge = false;
    total += v.value;
  }
  combined.status = all_converge ? SeriesStatus::ConvergesTo : SeriesStatus::Inconclusive;
  combined.value = all_converge ? total : 0.0;
  return combined;
}

CayleySubtree::CayleySubtree(int k, int depth) : k_(k), depth_(depth) {
  if (k < 2) throw Error(ErrorCode::InvalidOrder, "tree order k must be at least 2");
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be at least 1");
  const std::size_t total = expected_vertex_count(k, depth);
  parent_.reserve(total);
  level_.reserve(total);
  parent_.push_back(-1);
  level_.push_back(0);
  // Breadth-first: children of v are appended when v is visited.
  for (std::size_t v = 0; v < parent_.size(); ++v) {
    first_child_.push_back(child_list_.size());
    const int lv = level_[v];
    const int fan = lv == depth ? 0 : (v == 0 ? k + 1 : k);
    for (int c = 0; c < fan; ++c) {
      child_list_.push_back(parent_.size());
      parent_.push_back(static_cast<long>(v));
      level_.push_back(lv + 1);
    }
    child_count_.push_back(static_cast<std::size_t>(fan));
  }
}

std::size_t CayleySubtree::expected_vertex_count(int k, int depth) {
  std::size_t kd = 1;
  for (int i = 0; i < depth; ++i) kd *= static_cast<std::size_t>(k);
  return 1 + static_cast<std::size_t>(k + 1) * (kd - 1) / static_cast<std::size_t>(k - 1);
}

std::span<const std::size_t> CayleySubtree::children(std::size_t v) const {
  return std::span<const std::size_t>(child_list_).subspan(first_child_.at(v), child_count_.at(v));
}

double cylinder_log_measure(const CayleySubtree& tree, const BoundaryLaw& law, std::span<const long> config,
                            LawCoordinates coords) {
  if (config.size() != tree.vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "configuration must assign every vertex of the subtree");
  }
  if (tree.k() != law.k()) throw Error(ErrorCode::InvalidArgument, "tree order and law order differ");
  double total = 0.0;
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    if (tree.on_boundary(v)) total += log_boundary_value(law, config[v], coords);
    if (const long p = tree.parent(v); p >= 0) {
      total += log_transfer_q(law.k(), law.theta(), law.field(), config[static_cast<std::size_t>(p)], config[v]);
    }
  }
  if (!std::isfinite(total)) throw Error(ErrorCode::SpinOutOfRange, "log-measure is not finite");
  return total;
}

}  // namespace sosmap
