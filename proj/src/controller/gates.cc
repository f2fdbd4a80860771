// Copyright 2026 The APECS Authors
//
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

#include "apecs/controller/gates.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "apecs/common/error.h"

namespace apecs::controller {
namespace {

void CheckB(double b) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw InvalidConfigError("algebraic gate needs B > 0");
  }
}

template <typename F>
std::vector<double> Map(std::span<const double> v, F f) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), f);
  return out;
}

}  // namespace

double Softplus(double v) {
  if (v > 30.0) return v;
  if (v < -30.0) return std::exp(v);
  return std::log1p(std::exp(v));
}

double SoftplusPrime(double v) {
  if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
  const double e = std::exp(v);
  return e / (1.0 + e);
}

double SoftplusSecond(double v) {
  const double s = SoftplusPrime(v);
  return s * (1.0 - s);
}

std::vector<double> Softplus(std::span<const double> v) {
  return Map(v, [](double x) { return Softplus(x); });
}

std::vector<double> SoftplusPrime(std::span<const double> v) {
  return Map(v, [](double x) { return SoftplusPrime(x); });
}

double ClipSaturation(double v) { return std::clamp(v, -1.0, 1.0); }

std::vector<double> ClipSaturation(std::span<const double> v) {
  return Map(v, [](double x) { return ClipSaturation(x); });
}

double AlgebraicSaturation(double v) {
  // v / sqrt(1 + v^2) overflows for |v| > 1e154; use the sign form there.
  if (std::abs(v) > 1e150) return v > 0 ? 1.0 : -1.0;
  return v / std::sqrt(1.0 + v * v);
}

double AlgebraicSaturationPrime(double v) {
  if (std::abs(v) > 1e100) return 0.0;
  const double q = 1.0 + v * v;
  return 1.0 / (q * std::sqrt(q));
}

std::vector<double> AlgebraicSaturation(std::span<const double> v) {
  return Map(v, [](double x) { return AlgebraicSaturation(x); });
}

double SqrtShiftPositive(double g, double b) {
  CheckB(b);
  const double r = std::hypot(g, std::sqrt(b));
  // For g < 0 the direct form cancels; (g + r)/2 == B / (2 (r - g)).
  return g >= 0.0 ? 0.5 * (g + r) : 0.5 * b / (r - g);
}

double SqrtShiftPositivePrime(double g, double b) {
  CheckB(b);
  const double r = std::hypot(g, std::sqrt(b));
  return SqrtShiftPositive(g, b) / r;
}

double SqrtShiftPositiveSecond(double g, double b) {
  CheckB(b);
  const double r = std::hypot(g, std::sqrt(b));
  return 0.5 * b / (r * r * r);
}

std::vector<double> SqrtShiftPositive(std::span<const double> g, double b) {
  CheckB(b);
  return Map(g, [b](double x) { return SqrtShiftPositive(x, b); });
}

double IdentityGateTarget(double x, double b) {
  CheckB(b);
  if (!(std::abs(x) < 1.0)) {
    throw DomainError("identity gate target needs |x| < 1");
  }
  const double root = std::sqrt((1.0 - x) * (1.0 + x));
  return 1.0 / root - 0.25 * b * root;
}

std::string_view GateKindName(GateKind kind) {
  return kind == GateKind::kClipSoftplus ? "clip_softplus" : "algebraic_sqrt";
}

GateKind ParseGateKind(std::string_view name) {
  if (name == "clip_softplus") return GateKind::kClipSoftplus;
  if (name == "algebraic_sqrt") return GateKind::kAlgebraicSqrt;
  throw InvalidConfigError("unknown gate kind '" + std::string(name) + "'");
}

void GatePair::Validate() const {
  if (kind == GateKind::kAlgebraicSqrt) CheckB(b);
}

double GatePair::Saturate(double v) const {
  return kind == GateKind::kClipSoftplus ? ClipSaturation(v)
                                         : AlgebraicSaturation(v);
}

double GatePair::SaturatePrime(double v) const {
  if (kind == GateKind::kClipSoftplus) return std::abs(v) < 1.0 ? 1.0 : 0.0;
  return AlgebraicSaturationPrime(v);
}

double GatePair::Positive(double g) const {
  const double p = kind == GateKind::kClipSoftplus ? Softplus(g)
                                                   : SqrtShiftPositive(g, b);
  return std::max(p, kPositiveFloor);
}

double GatePair::PositivePrime(double g) const {
  return kind == GateKind::kClipSoftplus ? SoftplusPrime(g)
                                         : SqrtShiftPositivePrime(g, b);
}

double GatePair::PositiveSecond(double g) const {
  return kind == GateKind::kClipSoftplus ? SoftplusSecond(g)
                                         : SqrtShiftPositiveSecond(g, b);
}

}  // namespace apecs::controller
