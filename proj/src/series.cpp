#include "sosmap/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sosmap {

std::string_view to_string(SeriesStatus v) noexcept {
  switch (v) {
    case SeriesStatus::ConvergesTo: return "ConvergesTo";
    case SeriesStatus::Diverges: return "Diverges";
    case SeriesStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(SeriesMethod v) noexcept {
  return v == SeriesMethod::GeometricRatio ? "GeometricRatio" : "PartialSumHeuristic";
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(top)) return top;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - top);
  return top + std::log(acc);
}

SeriesVerdict geometric_verdict(double log_amplitude, double log_ratio) {
  SeriesVerdict v;
  v.method = SeriesMethod::GeometricRatio;
  if (log_ratio < 0.0) {
    // A r / (1 - r)
    v.status = SeriesStatus::ConvergesTo;
    v.value = std::exp(log_amplitude + log_ratio) / -std::expm1(log_ratio);
  } else {
    // Terms never decrease, so the sum of positive terms is infinite.
    v.status = SeriesStatus::Diverges;
  }
  return v;
}

SeriesVerdict partial_sum_verdict(const std::function<double(std::size_t)>& log_term,
                                  const HeuristicOptions& opt) {
  SeriesVerdict v;
  v.method = SeriesMethod::PartialSumHeuristic;

  const double log_conv = std::log(opt.converge_ratio);
  const double log_div = std::log(opt.diverge_ratio);

  // Running sum kept as top * acc to survive terms beyond the double range.
  double log_top = -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  auto add = [&](double lt) {
    if (lt > log_top) {
      acc = acc * std::exp(log_top - lt) + 1.0;
      log_top = lt;
    } else {
      acc += std::exp(lt - log_top);
    }
  };
  auto log_sum = [&] { return log_top + std::log(acc); };

  std::size_t below = 0;
  std::size_t above = 0;
  double prev = log_term(1);
  add(prev);
  for (std::size_t j = 2; j <= opt.max_terms; ++j) {
    const double cur = log_term(j);
    add(cur);
    v.terms_used = j;
    const double log_ratio = cur - prev;
    prev = cur;

    if (log_sum() > std::log(opt.diverge_sum)) {
      v.status = SeriesStatus::Diverges;
      return v;
    }
    if (log_ratio < log_conv) {
      ++below;
      above = 0;
    } else if (log_ratio >= log_div) {
      ++above;
      below = 0;
    } else {
      below = above = 0;
    }
    if (above >= opt.sustain) {
      v.status = SeriesStatus::Diverges;
      return v;
    }
    if (below >= opt.sustain && cur - log_sum() < std::log(1e-18)) {
      // Bound the remainder by a geometric series with the last ratio.
      const double tail = std::exp(cur - log_sum() + log_ratio) / -std::expm1(log_ratio);
      v.status = SeriesStatus::ConvergesTo;
      v.value = std::exp(log_sum()) * (1.0 + tail);
      return v;
    }
  }
  v.status = SeriesStatus::Inconclusive;
  return v;
}

namespace {

long signed_index(std::size_t j, Side side) {
  const long sj = static_cast<long>(j);
  return side == Side::Left ? -sj : sj;
}

}  // namespace

SeriesVerdict tail_series_heuristic(const Field& field, double theta, int exponent_m, Side side,
                                    const HeuristicOptions& opt) {
  const double log_theta = std::log(theta);
  return partial_sum_verdict(
      [&](std::size_t j) {
        return exponent_m * static_cast<double>(j) * log_theta + field.log_value(signed_index(j, side));
      },
      opt);
}

SeriesVerdict tail_series_verdict(const Field& field, double theta, int exponent_m, Side side) {
  if (const auto tail = field.geometric_tail(side)) {
    const double log_theta = std::log(theta);
    double log_ratio = exponent_m * log_theta + tail->log_ratio;
    // Keep exact cancellation when the field decays in powers of theta itself.
    if (const auto* g = std::get_if<Field::GeometricNormalized>(&field.kind()); g && g->theta == theta) {
      log_ratio = (exponent_m + 1) * log_theta;
    }
    if (const auto* g = std::get_if<Field::GeometricFamily>(&field.kind()); g && g->base == theta) {
      log_ratio = (exponent_m + g->alpha) * log_theta;
    }
    return geometric_verdict(tail->log_amplitude, log_ratio);
  }
  return tail_series_heuristic(field, theta, exponent_m, side);
}

}  // namespace sosmap
