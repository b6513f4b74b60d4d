#include "sosmap/spectral.hpp"

#include <cmath>

#include "sosmap/error.hpp"

namespace sosmap {

namespace {

constexpr double kUnitCircleTolerance = 1e-9;

double require_constant_weight(const ModelParams& p) {
  const auto h = p.constant_weight();
  if (!h) throw Error(ErrorCode::NotConstantField, "the map depends on n; fixed points need a constant field");
  return *h;
}

double residual_of(const ModelParams& p, State s) {
  const State img = advance(p, s, 1);
  return std::hypot(img.x - s.x, img.y - s.y);
}

}  // namespace

std::string_view to_string(FixedPointLabel v) noexcept {
  return v == FixedPointLabel::Origin ? "Origin" : "Interior";
}

std::string_view to_string(TypeTag v) noexcept {
  switch (v) {
    case TypeTag::Attracting: return "Attracting";
    case TypeTag::Repelling: return "Repelling";
    case TypeTag::Saddle: return "Saddle";
    case TypeTag::NonHyperbolic: return "NonHyperbolic";
  }
  return "?";
}

std::string_view to_string(Regime v) noexcept {
  switch (v) {
    case Regime::ComplexUnitModulus: return "ComplexUnitModulus";
    case Regime::DoubleMinusOne: return "DoubleMinusOne";
    case Regime::RealSaddle: return "RealSaddle";
  }
  return "?";
}

std::string_view to_string(Resonance v) noexcept {
  switch (v) {
    case Resonance::OneTwo: return "OneTwo";
    case Resonance::OneThree: return "OneThree";
    case Resonance::OneFour: return "OneFour";
  }
  return "?";
}

std::pair<FixedPoint, FixedPoint> fixed_points(const ModelParams& p) {
  const double h = require_constant_weight(p);
  const double base = (p.tau() - 2.0) / (h * (p.tau() - p.y0() - p.x1()));
  const double xs = std::pow(base, 1.0 / (p.k() - 1));

  FixedPoint origin{{0.0, 0.0}, FixedPointLabel::Origin, 0.0};
  FixedPoint interior{{xs, xs}, FixedPointLabel::Interior, 0.0};
  interior.residual = residual_of(p, interior.location);
  return {origin, interior};
}

Matrix2 jacobian(const ModelParams& p, State s) {
  const double h = require_constant_weight(p);
  const int k = p.k();
  return {{{p.coeff0() * h * k * ipow(s.x, k - 1) + p.tau(), -1.0}, {1.0, 0.0}}};
}

std::array<std::complex<double>, 2> unit_det_eigenvalues(double trace) {
  const double disc = trace * trace - 4.0;
  if (disc < 0.0) {
    const double im = 0.5 * std::sqrt(-disc);
    return {{{0.5 * trace, -im}, {0.5 * trace, im}}};
  }
  // Larger-modulus root first, the other from the unit product.
  const double big = 0.5 * (trace + std::copysign(std::sqrt(disc), trace));
  if (big == 0.0) return {{{0.0, 0.0}, {0.0, 0.0}}};
  return {{{1.0 / big, 0.0}, {big, 0.0}}};
}

RegimeThresholds regime_thresholds(int k) {
  if (k < 2) throw Error(ErrorCode::InvalidOrder, "tree order k must be at least 2");
  const double km1 = k - 1;
  return {2.0 * (k + 1) / km1, 2.0 * k / km1};
}

SpectralReport classify(const ModelParams& p, const FixedPoint& fp) {
  SpectralReport r;
  r.fixed_point = fp;
  const int k = p.k();
  const double tau = p.tau();

  double trace = 0.0;
  if (fp.label == FixedPointLabel::Origin) {
    trace = jacobian(p, fp.location)[0][0];
  } else {
    require_constant_weight(p);
    // coeff0 h k x*^(k-1) = -k (tau - 2) at x*, so the trace simplifies exactly.
    trace = 2.0 * k - (k - 1) * tau;
  }
  r.eigenvalues = unit_det_eigenvalues(trace);

  const double m0 = std::abs(r.eigenvalues[0]);
  const double m1 = std::abs(r.eigenvalues[1]);
  const bool on_circle =
      std::abs(m0 - 1.0) <= kUnitCircleTolerance || std::abs(m1 - 1.0) <= kUnitCircleTolerance;
  if (on_circle) {
    r.type_tag = TypeTag::NonHyperbolic;
  } else if (m0 < 1.0 && m1 < 1.0) {
    r.type_tag = TypeTag::Attracting;
  } else if (m0 > 1.0 && m1 > 1.0) {
    r.type_tag = TypeTag::Repelling;
  } else {
    r.type_tag = TypeTag::Saddle;
  }

  if (fp.label != FixedPointLabel::Interior) return r;

  const auto thr = regime_thresholds(k);
  if (std::abs(tau - thr.tau_ns_upper) <= kResonanceTolerance) {
    r.regime = Regime::DoubleMinusOne;
    r.resonances.insert(Resonance::OneTwo);
  } else if (tau < thr.tau_ns_upper) {
    r.regime = Regime::ComplexUnitModulus;
  } else {
    r.regime = Regime::RealSaddle;
  }
  if (std::abs(tau - thr.tau_strong) <= kResonanceTolerance) r.resonances.insert(Resonance::OneFour);
  if (std::abs(trace + 1.0) <= kResonanceTolerance) r.resonances.insert(Resonance::OneThree);

  if (r.regime == Regime::ComplexUnitModulus) {
    const auto& upper = r.eigenvalues[0].imag() > 0.0 ? r.eigenvalues[0] : r.eigenvalues[1];
    r.rotation_angle = std::atan2(upper.imag(), upper.real());
    const double km1 = k - 1;
    const double radicand = km1 * (tau - 2.0) * (2.0 * (k + 1) - km1 * tau);
    r.complement_angle = std::atan(trace / std::sqrt(radicand));
  }
  return r;
}

}  // namespace sosmap
