#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>

#include "sosmap/field.hpp"

namespace sosmap {

enum class SeriesStatus { ConvergesTo, Diverges, Inconclusive };
enum class SeriesMethod { GeometricRatio, PartialSumHeuristic };

std::string_view to_string(SeriesStatus v) noexcept;
std::string_view to_string(SeriesMethod v) noexcept;

struct SeriesVerdict {
  SeriesStatus status = SeriesStatus::Inconclusive;
  double value = 0.0;  // meaningful for ConvergesTo only
  std::size_t terms_used = 0;
  SeriesMethod method = SeriesMethod::PartialSumHeuristic;

  bool converges() const noexcept { return status == SeriesStatus::ConvergesTo; }
  bool diverges() const noexcept { return status == SeriesStatus::Diverges; }
};

struct HeuristicOptions {
  std::size_t max_terms = 200000;
  std::size_t sustain = 50;
  double converge_ratio = 1.0 - 1e-6;
  double diverge_ratio = 1.0 - 1e-9;
  double diverge_sum = 1e12;
};

// Decides sum_{j>=1} exp(log_term(j)) from its terms alone.
//
// ConvergesTo needs the term ratio below converge_ratio for `sustain`
// consecutive terms; Diverges needs the ratio at or above diverge_ratio for
// `sustain` consecutive terms, or the partial sum above diverge_sum.
SeriesVerdict partial_sum_verdict(const std::function<double(std::size_t)>& log_term,
                                  const HeuristicOptions& opt = {});

// Exact verdict for sum_{j>=1} exp(log_amplitude + j log_ratio).
SeriesVerdict geometric_verdict(double log_amplitude, double log_ratio);

// sum_{j>=1} theta^(m j) h(-j) (Left) or h(j) (Right), using the field's
// current normalization.
SeriesVerdict tail_series_verdict(const Field& field, double theta, int exponent_m, Side side);
SeriesVerdict tail_series_heuristic(const Field& field, double theta, int exponent_m, Side side,
                                    const HeuristicOptions& opt = {});

// log(sum exp(v)) with the largest term factored out; -inf for an empty span.
double log_sum_exp(std::span<const double> values);

}  // namespace sosmap
