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

#include "apecs/loss/loss_weighting.h"

#include <algorithm>
#include <cmath>

#include "apecs/common/error.h"

namespace apecs::loss {

LossBreakdown DualLoss(std::span<const double> x_hat, std::span<const double> x,
                       std::span<const double> x_bar, std::size_t n_x,
                       double gamma) {
  if (x_hat.empty() || n_x == 0) throw InvalidInputError("empty batch");
  if (x.size() != x_hat.size() || x_bar.size() != x_hat.size() ||
      x_hat.size() % n_x != 0) {
    throw InvalidInputError("loss inputs have incongruent shapes");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw InvalidInputError("gamma must lie in [0, 1]");
  }
  double human = 0.0;
  double expert = 0.0;
  for (std::size_t i = 0; i < x_hat.size(); ++i) {
    const double dh = x_hat[i] - x[i];
    const double de = x_hat[i] - x_bar[i];
    human += dh * dh;
    expert += de * de;
  }
  const double norm = double(x_hat.size());
  LossBreakdown out;
  out.l_human = human / norm;
  out.l_expert = expert / norm;
  out.gamma = gamma;
  out.l_total = gamma * out.l_human + (1.0 - gamma) * out.l_expert;
  return out;
}

double WorstCaseExpertLoss(double alpha, double lt) {
  if (lt <= 1.0) return alpha * alpha + alpha * lt + lt * lt / 3.0;
  return (alpha + 1.0) * (alpha + 1.0) - (alpha + 2.0 / 3.0) / lt;
}

double WorstCaseHumanLoss(double lt) {
  const double d = lt - 1.0;
  if (lt <= 1.0) return d * d / 3.0;
  return d * d / (3.0 * lt * lt);
}

double OptimalGamma(double alpha) {
  const double a1 = alpha + 1.0;
  return 3.0 * a1 * a1 / (3.0 * alpha * (alpha + 2.0) + 4.0);
}

bool GammaConditions(double alpha, double gamma) {
  constexpr double kThreshold = 3.0 / 5.0;
  if (gamma > kThreshold) return true;
  return gamma > 0.0 && alpha < 2.0 * gamma / (3.0 - 3.0 * gamma);
}

double StationaryLipschitz(double alpha, double gamma) {
  return 1.5 * alpha * (gamma - 1.0) + gamma;
}

double TotalLossSlope(double alpha, double gamma, double lt) {
  if (lt < 1.0) {
    return -alpha * gamma + alpha - 2.0 * gamma / 3.0 + 2.0 * lt / 3.0;
  }
  if (lt == 1.0) return -(3.0 * alpha + 2.0) * (gamma - 1.0) / 3.0;
  return ((2.0 - 3.0 * alpha * (gamma - 1.0)) * lt - 2.0 * gamma) /
         (3.0 * lt * lt * lt);
}

bool InitLipschitzUsesFormula(double alpha, double gamma) {
  return GammaConditions(alpha, gamma) &&
         StationaryLipschitz(alpha, gamma) > kMinInitLipschitz;
}

double InitLipschitz(double alpha, double gamma) {
  return InitLipschitzUsesFormula(alpha, gamma)
             ? StationaryLipschitz(alpha, gamma)
             : kFallbackInitLipschitz;
}

double EstimateAlpha(std::span<const double> x, std::span<const double> x_bar) {
  if (x.empty()) throw InvalidInputError("empty dataset");
  if (x.size() != x_bar.size()) {
    throw InvalidInputError("command arrays have different lengths");
  }
  double min_agreement = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double sign = (x[i] > 0.0) - (x[i] < 0.0);
    min_agreement = std::min(min_agreement, sign * x_bar[i]);
  }
  return std::max(0.0, -min_agreement);
}

}  // namespace apecs::loss
