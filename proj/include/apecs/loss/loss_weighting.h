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

#ifndef APECS_LOSS_LOSS_WEIGHTING_H_
#define APECS_LOSS_LOSS_WEIGHTING_H_

#include <cstddef>
#include <span>

namespace apecs::loss {

// Human-mimicry and expert-tracking MSE terms and their convex combination.
struct LossBreakdown {
  double l_human = 0.0;
  double l_expert = 0.0;
  double gamma = 0.0;
  double l_total = 0.0;
};

struct WorstCaseParams {
  double alpha = 0.0;  // expert opposition bound: x_bar = -alpha sign(x)
  double lt = 0.5;     // target Lipschitz constant
};

// Flat arrays of N samples with n_x components each. Both terms are
// normalized by N * n_x. Throws InvalidInputError for an empty batch,
// incongruent shapes or gamma outside [0, 1].
LossBreakdown DualLoss(std::span<const double> x_hat, std::span<const double> x,
                       std::span<const double> x_bar, std::size_t n_x,
                       double gamma);

// Limit of the expert loss for an L_t-Lipschitz controller facing the
// worst-case expert, inputs uniform on [0, 1]:
//   alpha^2 + alpha L_t + L_t^2 / 3        for L_t <= 1
//   (alpha + 1)^2 - (alpha + 2/3) / L_t    for L_t >= 1
double WorstCaseExpertLoss(double alpha, double lt);

// Limit of the human loss for the worst-case L_t-Lipschitz controller:
//   (L_t - 1)^2 / 3            for L_t <= 1
//   (L_t - 1)^2 / (3 L_t^2)    for L_t >= 1
double WorstCaseHumanLoss(double lt);

// Weight that equalizes the worst-case magnitudes 1/3 and (alpha + 1)^2:
//   gamma* = 3 (alpha + 1)^2 / (3 alpha (alpha + 2) + 4)
double OptimalGamma(double alpha);

// (alpha < 2 gamma / (3 - 3 gamma) and 0 < gamma <= 3/5) or gamma > 3/5.
bool GammaConditions(double alpha, double gamma);

// Unconstrained minimizer of gamma * Lh + (1 - gamma) * Le on (0, 1):
//   L_t = 1.5 alpha (gamma - 1) + gamma
double StationaryLipschitz(double alpha, double gamma);

// Piecewise derivative d(gamma * Lh + (1 - gamma) * Le) / d L_t of the
// worst-case losses.
double TotalLossSlope(double alpha, double gamma, double lt);

inline constexpr double kMinInitLipschitz = 0.01;
inline constexpr double kFallbackInitLipschitz = 0.5;

// StationaryLipschitz() when GammaConditions() holds and the value exceeds
// kMinInitLipschitz, otherwise kFallbackInitLipschitz.
double InitLipschitz(double alpha, double gamma);
// True when InitLipschitz() takes the stationary-point branch.
bool InitLipschitzUsesFormula(double alpha, double gamma);

// alpha = max(0, -min_i sign(x_i) x_bar_i) over every sample and component.
// Throws InvalidInputError on an empty or incongruent dataset.
double EstimateAlpha(std::span<const double> x, std::span<const double> x_bar);

}  // namespace apecs::loss

#endif  // APECS_LOSS_LOSS_WEIGHTING_H_
