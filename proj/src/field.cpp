#include "sosmap/field.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "sosmap/error.hpp"

namespace sosmap {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidFieldSpec, std::string(what) + " must be positive and finite");
  }
}

}  // namespace

Field Field::constant(double h) {
  require_positive(h, "constant field value");
  return Field(Constant{h});
}

Field Field::geometric_normalized(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw Error(ErrorCode::InvalidFieldSpec, "geometric field needs theta in (0,1)");
  }
  return Field(GeometricNormalized{theta});
}

Field Field::geometric_family(double c, double base, double alpha) {
  require_positive(c, "family amplitude");
  require_positive(base, "family base");
  if (!std::isfinite(alpha)) throw Error(ErrorCode::InvalidFieldSpec, "family exponent must be finite");
  return Field(GeometricFamily{c, base, alpha});
}

Field Field::table(std::map<long, double> values, double default_value) {
  require_positive(default_value, "table default");
  for (const auto& [j, v] : values) require_positive(v, "table entry");
  return Field(Table{std::move(values), default_value});
}

Field Field::normalized(Normalization n) const {
  Field out = *this;
  out.normalization_ = n;
  out.log_normalizer_ = 0.0;
  switch (n) {
    case Normalization::Raw:
      break;
    case Normalization::UnitAtZero:
      out.log_normalizer_ = log_raw(0);
      break;
    case Normalization::Probability:
      out.log_normalizer_ = std::visit(
          overloaded{
              [](const Constant&) -> double {
                throw Error(ErrorCode::InvalidFieldSpec, "a constant field is not summable");
              },
              [](const GeometricNormalized&) { return 0.0; },
              [](const GeometricFamily& g) {
                // sum_j c q^|j| = c (1 + q) / (1 - q), q = base^alpha
                const double log_q = g.alpha * std::log(g.base);
                if (!(log_q < 0.0)) {
                  throw Error(ErrorCode::InvalidFieldSpec, "geometric family is not summable");
                }
                const double q = std::exp(log_q);
                return std::log(g.c) + std::log1p(q) - std::log1p(-q);
              },
              [](const Table&) -> double {
                throw Error(ErrorCode::InvalidFieldSpec,
                            "a table with a positive default is not summable");
              },
          },
          kind_);
      break;
  }
  return out;
}

double Field::log_raw(long j) const {
  const double aj = static_cast<double>(std::labs(j));
  return std::visit(overloaded{
                        [](const Constant& c) { return std::log(c.h); },
                        [aj](const GeometricNormalized& g) {
                          return std::log1p(-g.theta) - std::log1p(g.theta) + aj * std::log(g.theta);
                        },
                        [aj](const GeometricFamily& g) {
                          return std::log(g.c) + g.alpha * aj * std::log(g.base);
                        },
                        [j](const Table& t) {
                          auto it = t.values.find(j);
                          return std::log(it == t.values.end() ? t.default_value : it->second);
                        },
                    },
                    kind_);
}

double Field::raw(long j) const {
  return std::visit(overloaded{
                        [](const Constant& c) { return c.h; },
                        [j](const Table& t) {
                          auto it = t.values.find(j);
                          return it == t.values.end() ? t.default_value : it->second;
                        },
                        [this, j](const auto&) { return std::exp(log_raw(j)); },
                    },
                    kind_);
}

double Field::log_value(long j) const { return log_raw(j) - log_normalizer_; }

double Field::value(long j) const {
  switch (normalization_) {
    case Normalization::Raw: return raw(j);
    case Normalization::UnitAtZero: return raw(j) / raw(0);
    case Normalization::Probability: break;
  }
  return std::exp(log_value(j));
}

bool Field::is_symmetric() const {
  return std::visit(overloaded{
                        [](const Table& t) {
                          for (const auto& [j, v] : t.values) {
                            auto it = t.values.find(-j);
                            const double mirror = it == t.values.end() ? t.default_value : it->second;
                            if (mirror != v) return false;
                          }
                          return true;
                        },
                        [](const auto&) { return true; },
                    },
                    kind_);
}

std::optional<double> Field::step_constant() const {
  return std::visit(overloaded{
                        [this](const Constant&) -> std::optional<double> { return value(1); },
                        [](const GeometricNormalized&) -> std::optional<double> { return std::nullopt; },
                        [this](const GeometricFamily& g) -> std::optional<double> {
                          if (g.alpha == 0.0 || g.base == 1.0) return value(1);
                          return std::nullopt;
                        },
                        [this](const Table& t) -> std::optional<double> {
                          for (const auto& [j, v] : t.values) {
                            if (j >= 1 && v != t.default_value) return std::nullopt;
                          }
                          return value(1);
                        },
                    },
                    kind_);
}

std::optional<Field::GeometricTail> Field::geometric_tail(Side) const {
  // All parametric kinds depend on |j| only, so both sides share the tail.
  return std::visit(overloaded{
                        [this](const Constant& c) -> std::optional<GeometricTail> {
                          return GeometricTail{std::log(c.h) - log_normalizer_, 0.0};
                        },
                        [this](const GeometricNormalized& g) -> std::optional<GeometricTail> {
                          return GeometricTail{std::log1p(-g.theta) - std::log1p(g.theta) - log_normalizer_,
                                               std::log(g.theta)};
                        },
                        [this](const GeometricFamily& g) -> std::optional<GeometricTail> {
                          return GeometricTail{std::log(g.c) - log_normalizer_, g.alpha * std::log(g.base)};
                        },
                        [](const Table&) -> std::optional<GeometricTail> { return std::nullopt; },
                    },
                    kind_);
}

std::string Field::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const Constant& c) { os << "constant:" << c.h; },
                 [&](const GeometricNormalized& g) { os << "geometric:" << g.theta; },
                 [&](const GeometricFamily& g) { os << "family:" << g.c << ',' << g.base << ',' << g.alpha; },
                 [&](const Table& t) {
                   os << "table:";
                   for (const auto& [j, v] : t.values) os << j << '=' << v << ';';
                   os << "default=" << t.default_value;
                 },
             },
             kind_);
  return os.str();
}

}  // namespace sosmap
