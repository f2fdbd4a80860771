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

#include "apecs/net/activation.h"

#include <cmath>
#include <string>

#include "apecs/common/error.h"

namespace apecs::net {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double NormalCdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }
double NormalPdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

}  // namespace

double Activate(Activation a, double x) {
  switch (a) {
    case Activation::kIdentity:
      return x;
    case Activation::kRelu:
      return x > 0.0 ? x : 0.0;
    case Activation::kTanh:
      return std::tanh(x);
    case Activation::kGelu:
      return x * NormalCdf(x);
  }
  return x;
}

double ActivateDerivative(Activation a, double x) {
  switch (a) {
    case Activation::kIdentity:
      return 1.0;
    case Activation::kRelu:
      return x > 0.0 ? 1.0 : 0.0;
    case Activation::kTanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case Activation::kGelu:
      return NormalCdf(x) + x * NormalPdf(x);
  }
  return 1.0;
}

double ActivateDerivative(Activation a, double x, double y) {
  if (a == Activation::kTanh) return 1.0 - y * y;
  return ActivateDerivative(a, x);
}

double ActivationLipschitz(Activation a) {
  if (a == Activation::kGelu) {
    // GeLU'' vanishes at sqrt(2), where the slope peaks at ~1.0681.
    const double x = std::sqrt(2.0);
    return NormalCdf(x) + x * NormalPdf(x);
  }
  return 1.0;
}

std::string_view ActivationName(Activation a) {
  switch (a) {
    case Activation::kIdentity:
      return "identity";
    case Activation::kRelu:
      return "relu";
    case Activation::kTanh:
      return "tanh";
    case Activation::kGelu:
      return "gelu";
  }
  return "identity";
}

Activation ParseActivation(std::string_view name) {
  if (name == "identity") return Activation::kIdentity;
  if (name == "relu") return Activation::kRelu;
  if (name == "tanh") return Activation::kTanh;
  if (name == "gelu") return Activation::kGelu;
  throw InvalidInputError("unknown activation '" + std::string(name) + "'");
}

}  // namespace apecs::net
