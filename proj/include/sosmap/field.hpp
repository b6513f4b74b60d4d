#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

namespace sosmap {

// How raw weights are rescaled before use. Boundary laws assume the weights
// sum to one; the difference equation assumes h(0) = 1.
enum class Normalization { Probability, UnitAtZero, Raw };

enum class Side { Left, Right };

// External-field weights h(j) = exp(Phi(j)) on the integers.
class Field {
 public:
  struct Constant {
    double h;
  };
  // h(j) = ((1 - theta) / (1 + theta)) * theta^|j|, sums to one.
  struct GeometricNormalized {
    double theta;
  };
  // h(j) = c * base^(alpha * |j|)
  struct GeometricFamily {
    double c;
    double base;
    double alpha;
  };
  struct Table {
    std::map<long, double> values;
    double default_value;
  };
  using Kind = std::variant<Constant, GeometricNormalized, GeometricFamily, Table>;

  // Tail of h(+-j), j >= 1, written as amplitude * ratio^j.
  struct GeometricTail {
    double log_amplitude;
    double log_ratio;
  };

  static Field constant(double h);
  static Field geometric_normalized(double theta);
  static Field geometric_family(double c, double base, double alpha);
  static Field table(std::map<long, double> values, double default_value);

  Field normalized(Normalization n) const;

  const Kind& kind() const noexcept { return kind_; }
  Normalization normalization() const noexcept { return normalization_; }

  double raw(long j) const;
  double log_raw(long j) const;
  double value(long j) const;
  double log_value(long j) const;
  double operator()(long j) const { return value(j); }

  bool is_symmetric() const;

  // The common value of h(n) for every n >= 1, when there is one.
  std::optional<double> step_constant() const;

  std::optional<GeometricTail> geometric_tail(Side side) const;

  std::string describe() const;

 private:
  explicit Field(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
  Normalization normalization_ = Normalization::Raw;
  double log_normalizer_ = 0.0;
};

}  // namespace sosmap
