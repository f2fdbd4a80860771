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

#ifndef APECS_CONTROLLER_GATES_H_
#define APECS_CONTROLLER_GATES_H_

#include <span>
#include <string_view>
#include <vector>

namespace apecs::controller {

// Outputs of every positive gate are floored here so that p(g) * x == 0
// implies x == 0 in floating point.
inline constexpr double kPositiveFloor = 1e-30;

// ln(1 + e^v), returning v above 30 and e^v below -30.
double Softplus(double v);
// Logistic sigmoid, the derivative of Softplus.
double SoftplusPrime(double v);
double SoftplusSecond(double v);

std::vector<double> Softplus(std::span<const double> v);
std::vector<double> SoftplusPrime(std::span<const double> v);

// max(-1, min(1, v)).
double ClipSaturation(double v);
std::vector<double> ClipSaturation(std::span<const double> v);

// v / sqrt(1 + v^2): odd, range (-1, 1), 1-Lipschitz.
double AlgebraicSaturation(double v);
double AlgebraicSaturationPrime(double v);
std::vector<double> AlgebraicSaturation(std::span<const double> v);

// (g + sqrt(g^2 + B)) / 2: positive, increasing, convex. Throws
// InvalidConfigError for B <= 0.
double SqrtShiftPositive(double g, double b);
double SqrtShiftPositivePrime(double g, double b);
double SqrtShiftPositiveSecond(double g, double b);
std::vector<double> SqrtShiftPositive(std::span<const double> g, double b);

// Gate value g for which the algebraic pair reproduces its input:
// AlgebraicSaturation(SqrtShiftPositive(g, B) * x) == x.
//   g(x) = 1 / sqrt(1 - x^2) - B sqrt(1 - x^2) / 4
// Throws DomainError for |x| >= 1.
double IdentityGateTarget(double x, double b);

enum class GateKind { kClipSoftplus, kAlgebraicSqrt };

std::string_view GateKindName(GateKind kind);
GateKind ParseGateKind(std::string_view name);

// A (saturation s, positive gate p) pair. `b` is only used by the algebraic
// pair.
struct GatePair {
  GateKind kind = GateKind::kClipSoftplus;
  double b = 4.0;

  // Throws InvalidConfigError when the pair parameters are invalid.
  void Validate() const;

  double Saturate(double v) const;
  // Derivative of Saturate; the clip uses 0 outside the open interval (-1, 1).
  double SaturatePrime(double v) const;
  double Positive(double g) const;
  double PositivePrime(double g) const;
  double PositiveSecond(double g) const;
};

}  // namespace apecs::controller

#endif  // APECS_CONTROLLER_GATES_H_
