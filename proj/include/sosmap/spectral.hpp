#pragma once

#include <array>
#include <complex>
#include <optional>
#include <set>
#include <string_view>
#include <utility>

#include "sosmap/map_core.hpp"

namespace sosmap {

// Absolute tolerance on the defining equation of each resonance locus.
inline constexpr double kResonanceTolerance = 1e-9;

enum class FixedPointLabel { Origin, Interior };

struct FixedPoint {
  State location;
  FixedPointLabel label = FixedPointLabel::Origin;
  double residual = 0.0;
};

enum class TypeTag { Attracting, Repelling, Saddle, NonHyperbolic };
enum class Regime { ComplexUnitModulus, DoubleMinusOne, RealSaddle };
enum class Resonance { OneTwo, OneThree, OneFour };

std::string_view to_string(FixedPointLabel v) noexcept;
std::string_view to_string(TypeTag v) noexcept;
std::string_view to_string(Regime v) noexcept;
std::string_view to_string(Resonance v) noexcept;

using Matrix2 = std::array<std::array<double, 2>, 2>;

struct SpectralReport {
  FixedPoint fixed_point;
  std::array<std::complex<double>, 2> eigenvalues;
  TypeTag type_tag = TypeTag::Saddle;
  std::optional<Regime> regime;
  std::set<Resonance> resonances;
  // Argument of the eigenvalue in the upper half plane, complex regime only.
  std::optional<double> rotation_angle;
  // arctan((2k-(k-1)tau) / sqrt((k-1)(tau-2)(2(k+1)-(k-1)tau))), complex regime only.
  std::optional<double> complement_angle;
};

// P0 = (0,0) and P1 = (x*, x*). Requires a constant map weight.
std::pair<FixedPoint, FixedPoint> fixed_points(const ModelParams& p);

Matrix2 jacobian(const ModelParams& p, State s);

SpectralReport classify(const ModelParams& p, const FixedPoint& fp);

// Roots of lambda^2 - trace lambda + 1 = 0, smaller modulus first.
std::array<std::complex<double>, 2> unit_det_eigenvalues(double trace);

struct RegimeThresholds {
  double tau_ns_upper;  // 2(k+1)/(k-1)
  double tau_strong;    // 2k/(k-1)
};

RegimeThresholds regime_thresholds(int k);

}  // namespace sosmap
