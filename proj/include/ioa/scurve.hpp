// Copyright 2026 The IOA Solver Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Inverse S-shaped cost curves: concave up to a deflection point, convex
// beyond it. An SCurve is split into a concave half (original curve left of
// the deflection point, left tangent to the right of it) and a convex half
// (right tangent to the left, original curve to the right); the two halves
// are handled separately by the solver.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "ioa/common.hpp"

namespace ioa {

enum class CurveKind { kPowerPower, kPowerHyperbolic, kCubic, kCustom };

inline const char* to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::kPowerPower: return "power_power";
    case CurveKind::kPowerHyperbolic: return "power_hyperbolic";
    case CurveKind::kCubic: return "cubic";
    case CurveKind::kCustom: return "custom";
  }
  return "unknown";
}

inline CurveKind curve_kind_from_string(const std::string& s) {
  if (s == "power_power") return CurveKind::kPowerPower;
  if (s == "power_hyperbolic") return CurveKind::kPowerHyperbolic;
  if (s == "cubic") return CurveKind::kCubic;
  if (s == "custom") return CurveKind::kCustom;
  throw Error(ErrorCode::kParse, "unknown curve family '" + s + "'");
}

// Family parameters. Only the fields of the selected family are read.
//   kPowerPower      a1 z^b1                 on [lower, z0]
//                    a1 z0^b1 + a2 (z-z0)^b2 on [z0, upper]
//   kPowerHyperbolic a1 z^b1                        on [lower, z0]
//                    a1 z0^b1 + a2 (z-z0)/(upper-z) on [z0, upper)
//   kCubic           a (z-z0)^3 + eps (z-z0) + w    on [lower, upper]
struct CurveSpec {
  CurveKind kind = CurveKind::kPowerPower;
  double lower = 0.0;
  double upper = 1.0;
  double deflection = 0.5;
  double a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;
  double a = 0.0, eps = 0.0, w = 0.0;
  // Multiplies every cost value and slope.
  double scale = 1.0;

  friend bool operator==(const CurveSpec&, const CurveSpec&) = default;
};

// A user-supplied curve. When `derivative` is empty, one-sided finite
// differences with a fixed step of 1e-6 * (upper - lower) are used.
struct CustomCurve {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

namespace scurve_detail {
// Fraction of (upper - deflection) kept clear of the hyperbolic pole.
inline constexpr double kPoleGuard = 1e-2;
inline constexpr double kPoleFloor = 1e-6;
inline constexpr double kFdStep = 1e-6;
inline constexpr int kValidationSamples = 257;
inline constexpr int kShapeSamples = 65;
}  // namespace scurve_detail

class SCurve {
 public:
  SCurve() = default;

  static SCurve from_spec(const CurveSpec& spec) {
    SCurve c;
    c.spec_ = spec;
    c.finish();
    return c;
  }

  static SCurve custom(double lower, double upper, double deflection,
                       CustomCurve fn) {
    SCurve c;
    c.spec_.kind = CurveKind::kCustom;
    c.spec_.lower = lower;
    c.spec_.upper = upper;
    c.spec_.deflection = deflection;
    c.custom_ = std::make_shared<const CustomCurve>(std::move(fn));
    c.finish();
    return c;
  }

  CurveKind kind() const { return spec_.kind; }
  const CurveSpec& spec() const { return spec_; }
  double lower() const { return spec_.lower; }
  double upper() const { return spec_.upper; }
  double deflection() const { return spec_.deflection; }
  double range() const { return spec_.upper - spec_.lower; }
  double dleft() const { return dleft_; }
  double dright() const { return dright_; }

  // Largest argument the solver ever uses. Equal to upper() except for the
  // hyperbolic family, whose cost diverges at upper(); there the domain stops
  // short of the pole by max(1e-6 * range, 1e-2 * (upper - deflection)).
  double model_upper() const { return model_upper_; }

  // Cost at z. Arguments within 1e-7 * range of the domain are clamped.
  double operator()(double z) const { return eval(z); }
  double eval(double z) const {
    z = clamp_to_domain(z);
    return spec_.scale * raw_eval(z);
  }

  // Derivative of the original curve. `right` selects the one-sided
  // derivative at kinks; away from the deflection point both agree.
  double slope(double z, bool right) const {
    z = clamp_to_domain(z);
    if (z == spec_.deflection) return right ? dright_ : dleft_;
    return spec_.scale * raw_slope(z, right);
  }

  SCurve scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor))
      throw Error(ErrorCode::kInvalidArgument, "scale factor must be > 0");
    SCurve c = *this;
    c.spec_.scale *= factor;
    c.dleft_ *= factor;
    c.dright_ *= factor;
    return c;
  }

  // Same family and parameters with the deflection point moved.
  SCurve with_deflection(double deflection) const {
    CurveSpec s = spec_;
    s.deflection = deflection;
    SCurve c;
    c.spec_ = s;
    c.custom_ = custom_;
    c.finish();
    return c;
  }

 private:
  double clamp_to_domain(double z) const {
    const double tol = 1e-7 * std::max(1.0, range());
    if (z < spec_.lower) {
      if (z < spec_.lower - tol) throw domain_error(z);
      return spec_.lower;
    }
    const double hi = spec_.kind == CurveKind::kPowerHyperbolic
                          ? model_upper_
                          : spec_.upper;
    if (z > hi) {
      if (z > hi + tol) throw domain_error(z);
      return hi;
    }
    return z;
  }

  Error domain_error(double z) const {
    std::ostringstream os;
    os << "argument " << z << " outside [" << spec_.lower << ", "
       << (spec_.kind == CurveKind::kPowerHyperbolic ? model_upper_
                                                     : spec_.upper)
       << "]";
    return Error(ErrorCode::kDomain, os.str());
  }

  double left_piece(double z) const {
    return spec_.a1 * std::pow(z, spec_.b1);
  }

  double raw_eval(double z) const {
    const double z0 = spec_.deflection;
    switch (spec_.kind) {
      case CurveKind::kPowerPower:
        if (z <= z0) return left_piece(z);
        return left_piece(z0) + spec_.a2 * std::pow(z - z0, spec_.b2);
      case CurveKind::kPowerHyperbolic:
        if (z <= z0) return left_piece(z);
        return left_piece(z0) + spec_.a2 * (z - z0) / (spec_.upper - z);
      case CurveKind::kCubic: {
        const double t = z - z0;
        return spec_.a * t * t * t + spec_.eps * t + spec_.w;
      }
      case CurveKind::kCustom:
        return custom_->value(z);
    }
    return 0.0;
  }

  double raw_slope(double z, bool right) const {
    const double z0 = spec_.deflection;
    const bool on_left = right ? z < z0 : z <= z0;
    switch (spec_.kind) {
      case CurveKind::kPowerPower:
        if (on_left) {
          return z == 0.0 && spec_.b1 < 1.0
                     ? kInf
                     : spec_.a1 * spec_.b1 * std::pow(z, spec_.b1 - 1.0);
        }
        if (spec_.b2 == 1.0) return spec_.a2;
        return spec_.a2 * spec_.b2 * std::pow(z - z0, spec_.b2 - 1.0);
      case CurveKind::kPowerHyperbolic: {
        if (on_left) {
          return z == 0.0 && spec_.b1 < 1.0
                     ? kInf
                     : spec_.a1 * spec_.b1 * std::pow(z, spec_.b1 - 1.0);
        }
        const double gap = spec_.upper - z;
        return spec_.a2 * (spec_.upper - z0) / (gap * gap);
      }
      case CurveKind::kCubic: {
        const double t = z - z0;
        return 3.0 * spec_.a * t * t + spec_.eps;
      }
      case CurveKind::kCustom: {
        if (custom_->derivative) return custom_->derivative(z);
        const double h = scurve_detail::kFdStep * range();
        const double hi = model_upper_;
        if (right && z + h <= hi)
          return (custom_->value(z + h) - custom_->value(z)) / h;
        if (!right && z - h >= spec_.lower)
          return (custom_->value(z) - custom_->value(z - h)) / h;
        if (z + h <= hi)
          return (custom_->value(z + h) - custom_->value(z)) / h;
        return (custom_->value(z) - custom_->value(z - h)) / h;
      }
    }
    return 0.0;
  }

  void finish() {
    const double lo = spec_.lower, hi = spec_.upper, z0 = spec_.deflection;
    if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(z0))
      throw Error(ErrorCode::kDomain, "curve bounds must be finite");
    if (!(lo < hi))
      throw Error(ErrorCode::kDomain, "curve requires lower < upper");
    if (z0 < lo || z0 > hi)
      throw Error(ErrorCode::kDomain,
                  "deflection point must lie within [lower, upper]");
    if (!(spec_.scale > 0.0))
      throw Error(ErrorCode::kDomain, "curve scale must be positive");
    switch (spec_.kind) {
      case CurveKind::kPowerPower:
        if (lo < 0.0 || !(spec_.a1 > 0.0) || !(spec_.b1 > 0.0) ||
            spec_.b1 > 1.0 || spec_.a2 < 0.0 || spec_.b2 < 1.0)
          throw Error(ErrorCode::kDomain,
                      "power_power needs lower>=0, a1>0, b1 in (0,1], "
                      "a2>=0, b2>=1");
        break;
      case CurveKind::kPowerHyperbolic:
        if (lo < 0.0 || !(spec_.a1 > 0.0) || !(spec_.b1 > 0.0) ||
            spec_.b1 > 1.0 || spec_.a2 < 0.0 || !(z0 < hi))
          throw Error(ErrorCode::kDomain,
                      "power_hyperbolic needs lower>=0, a1>0, b1 in (0,1], "
                      "a2>=0, deflection<upper");
        break;
      case CurveKind::kCubic:
        if (!(spec_.a > 0.0) || spec_.eps < 0.0)
          throw Error(ErrorCode::kDomain,
                      "cubic needs a>0 and eps>=0 so that the slope "
                      "3a(z-z0)^2+eps has at most one root");
        break;
      case CurveKind::kCustom:
        if (!custom_ || !custom_->value)
          throw Error(ErrorCode::kDomain, "custom curve without a function");
        break;
    }
    model_upper_ = hi;
    if (spec_.kind == CurveKind::kPowerHyperbolic) {
      const double guard =
          std::max(scurve_detail::kPoleFloor * (hi - lo),
                   scurve_detail::kPoleGuard * (hi - z0));
      model_upper_ = hi - guard;
    }
    const double s = spec_.scale;
    if (z0 > lo) {
      dleft_ = s * raw_slope(z0, false);
    }
    if (z0 < model_upper_) {
      dright_ = s * raw_slope(z0, true);
    }
    if (z0 <= lo) dleft_ = dright_;
    if (z0 >= model_upper_) dright_ = dleft_;
  }

  CurveSpec spec_;
  std::shared_ptr<const CustomCurve> custom_;
  double model_upper_ = 0.0;
  double dleft_ = 0.0;
  double dright_ = 0.0;
};

// Sampled shape audit: continuity at the deflection point, monotonicity and
// concave-then-convex shape. Throws on the first violation.
inline void validate_scurve(const SCurve& c) {
  using namespace scurve_detail;
  const double lo = c.lower(), hi = c.model_upper(), z0 = c.deflection();
  const double top = c.eval(hi);
  if (!std::isfinite(top))
    throw Error(ErrorCode::kDomain, "curve is not finite on its domain");
  const double tol = 1e-8 * std::max(1.0, std::fabs(top));

  // Continuity at the deflection point.
  {
    double jump = 0.0;
    if (c.kind() == CurveKind::kCustom) {
      const double h = 1e-9 * c.range();
      const double f0 = c.eval(z0);
      const double loose = 1e-4 * std::max(1.0, std::fabs(top));
      if (z0 - h >= lo) jump = std::max(jump, std::fabs(c.eval(z0 - h) - f0));
      if (z0 + h <= hi) jump = std::max(jump, std::fabs(c.eval(z0 + h) - f0));
      if (jump > loose)
        throw Error(ErrorCode::kDiscontinuous,
                    "custom curve jumps at the deflection point");
    } else if (c.kind() == CurveKind::kCubic) {
      jump = 0.0;
    } else {
      const auto& s = c.spec();
      const double left = s.scale * s.a1 * std::pow(z0, s.b1);
      const double right = c.eval(z0);
      jump = std::fabs(left - right);
      if (jump > tol)
        throw Error(ErrorCode::kDiscontinuous,
                    "left and right pieces disagree at the deflection point");
    }
  }

  // Monotonicity over a uniform grid plus the special points.
  {
    double prev_z = lo;
    double prev = c.eval(lo);
    auto check = [&](double z) {
      const double v = c.eval(z);
      if (!std::isfinite(v))
        throw Error(ErrorCode::kDomain, "curve value is not finite");
      if (v < prev - tol) {
        std::ostringstream os;
        os << "curve decreases between " << prev_z << " and " << z;
        throw Error(ErrorCode::kNonMonotone, os.str());
      }
      prev = v;
      prev_z = z;
    };
    bool deflection_done = z0 <= lo;
    for (int i = 1; i < kValidationSamples; ++i) {
      const double z = lo + (hi - lo) * i / (kValidationSamples - 1);
      if (!deflection_done && z >= z0) {
        if (z > z0) check(z0);
        deflection_done = true;
      }
      check(z);
    }
  }

  auto midpoint_audit = [&](double a, double b, bool concave) {
    if (!(b > a)) return;
    double f[kShapeSamples];
    for (int i = 0; i < kShapeSamples; ++i)
      f[i] = c.eval(a + (b - a) * i / (kShapeSamples - 1));
    for (int i = 0; i + 2 < kShapeSamples; ++i) {
      const double chord = 0.5 * (f[i] + f[i + 2]);
      const bool bad =
          concave ? f[i + 1] < chord - tol : f[i + 1] > chord + tol;
      if (bad)
        throw Error(ErrorCode::kShape,
                    concave ? "curve is not concave left of the deflection "
                              "point"
                            : "curve is not convex right of the deflection "
                              "point");
    }
  };
  midpoint_audit(lo, z0, true);
  midpoint_audit(z0, hi, false);
}

// Builds and validates a curve from family parameters.
inline SCurve build_scurve(const CurveSpec& spec) {
  if (spec.kind == CurveKind::kCustom)
    throw Error(ErrorCode::kInvalidArgument,
                "custom curves are built with build_custom_scurve");
  SCurve c = SCurve::from_spec(spec);
  validate_scurve(c);
  return c;
}

inline SCurve build_custom_scurve(double lower, double upper,
                                  double deflection, CustomCurve fn) {
  SCurve c = SCurve::custom(lower, upper, deflection, std::move(fn));
  validate_scurve(c);
  return c;
}

// Concave and convex halves of an SCurve together with the tight BigM
// values M0 = cap(K) and M1 = cup(K) for the regime linearisation.
class SplitPair {
 public:
  SplitPair() = default;
  explicit SplitPair(SCurve curve) : curve_(std::move(curve)) {
    m0_ = cap(upper());
    m1_ = cup(upper());
  }

  const SCurve& curve() const { return curve_; }
  double lower() const { return curve_.lower(); }
  // Model domain upper end (stops short of a hyperbolic pole).
  double upper() const { return curve_.model_upper(); }
  double deflection() const { return curve_.deflection(); }

  double cap(double z) const {
    const double z0 = curve_.deflection();
    if (z <= z0) return curve_.eval(z);
    return curve_.eval(z0) + (z - z0) * curve_.dleft();
  }
  double cup(double z) const {
    const double z0 = curve_.deflection();
    if (z >= z0) return curve_.eval(z);
    return curve_.eval(z0) + (z - z0) * curve_.dright();
  }
  // Right-hand slope of cap; +inf where the original curve has a vertical
  // tangent (power families at zero).
  double cap_slope(double z) const {
    if (z >= curve_.deflection()) return curve_.dleft();
    return curve_.slope(z, true);
  }
  // A subgradient of cup at z.
  double cup_slope(double z) const {
    if (z <= curve_.deflection()) return curve_.dright();
    return curve_.slope(z, true);
  }

  double m0() const { return m0_; }
  double m1() const { return m1_; }

 private:
  SCurve curve_;
  double m0_ = 0.0;
  double m1_ = 0.0;
};

inline SplitPair split(const SCurve& curve) { return SplitPair(curve); }

// Bound on the multipliers gamma of the inner-approximation LP:
// L * (upper - lower) + cap(upper) - cap(lower), L a Lipschitz bound on cap.
// A vertical tangent at `lower` is replaced by the chord slope over the
// duplicate-point tolerance 1e-7 * range, which bounds every chord slope
// between distinct approximation points. Floored at 1.
inline double bigm_gamma(const SplitPair& pair) {
  const double lo = pair.lower(), hi = pair.upper();
  const double range = hi - lo;
  double lip = std::fabs(pair.curve().dleft());
  double at_lower = pair.cap_slope(lo);
  if (!std::isfinite(at_lower)) {
    const double h = 1e-7 * range;
    at_lower = (pair.cap(lo + h) - pair.cap(lo)) / h;
  }
  lip = std::max(lip, std::fabs(at_lower));
  constexpr int kSamples = 64;
  for (int i = 0; i < kSamples; ++i) {
    const double z = lo + range * i / (kSamples - 1);
    const double s = pair.cap_slope(z);
    if (std::isfinite(s)) lip = std::max(lip, std::fabs(s));
  }
  const double m2 = lip * range + pair.cap(hi) - pair.cap(lo);
  return std::max(1.0, m2);
}

}  // namespace ioa
