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

#include "apecs/training/trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apecs/common/error.h"
#include "apecs/net/adam.h"
#include "apecs/training/evaluation.h"

namespace apecs::training {
namespace {

// Accumulates squared errors for one batch pass.
struct LossAccumulator {
  double human = 0.0;
  double expert = 0.0;

  loss::LossBreakdown Finish(std::size_t n, double gamma) const {
    const double denom = double(n * kNumCommands);
    loss::LossBreakdown out;
    out.l_human = human / denom;
    out.l_expert = expert / denom;
    out.gamma = gamma;
    out.l_total = gamma * out.l_human + (1.0 - gamma) * out.l_expert;
    return out;
  }
};

bool Finite(const loss::LossBreakdown& l) {
  return std::isfinite(l.l_human) && std::isfinite(l.l_expert) &&
         std::isfinite(l.l_total);
}

// Loss plus gradient for one full pass. Returns the loss at the current
// parameters; gradients land in `tape` and `d_alpha`.
class BatchGradient {
 public:
  BatchGradient(const Dataset& data, double gamma)
      : data_(data), gamma_(gamma) {}

  loss::LossBreakdown Run(const Model& model, net::GradientTape& tape,
                          double& d_alpha) {
    tape.SetZero();
    d_alpha = 0.0;
    double d_lp = 0.0;
    LossAccumulator acc;
    const double scale = 2.0 / double(data_.size() * kNumCommands);
    std::array<double, kNumCommands> og{};
    for (const Sample& s : data_) {
      std::span<const double> out;
      if (model.is_gated()) {
        model.controller().ForwardInto(s.z, gated_record_);
        out = gated_record_.output;
      } else {
        model.network().ForwardInto(s.z, plain_record_);
        out = plain_record_.output();
      }
      for (std::size_t i = 0; i < kNumCommands; ++i) {
        const double eh = out[i] - s.z[i];
        const double ee = out[i] - s.x_bar[i];
        acc.human += eh * eh;
        acc.expert += ee * ee;
        og[i] = scale * (gamma_ * eh + (1.0 - gamma_) * ee);
      }
      if (model.is_gated()) {
        model.controller().AccumulateGradient(gated_record_, og, tape,
                                              d_alpha, d_lp);
      } else {
        model.network().BackwardAccumulate(plain_record_, og, tape);
      }
    }
    if (model.is_gated()) model.controller().ApplyLpChain(d_lp, tape);
    return acc.Finish(data_.size(), gamma_);
  }

 private:
  const Dataset& data_;
  double gamma_;
  controller::ApecsRecord gated_record_;
  net::ForwardRecord plain_record_;
};

}  // namespace

std::string_view GammaModeName(GammaMode mode) {
  switch (mode) {
    case GammaMode::kZero:
      return "0";
    case GammaMode::kHalf:
      return "0.5";
    case GammaMode::kOptimal:
      return "optimal";
    case GammaMode::kFixed:
      return "fixed";
  }
  return "?";
}

GammaMode ParseGammaMode(std::string_view name) {
  for (GammaMode m : {GammaMode::kZero, GammaMode::kHalf, GammaMode::kOptimal,
                      GammaMode::kFixed}) {
    if (name == GammaModeName(m)) return m;
  }
  throw InvalidConfigError("unknown gamma mode '" + std::string(name) + "'");
}

std::string ExperimentPlan::Name() const {
  std::string name(ModelKindName(kind));
  name += "_gamma-";
  if (gamma_mode == GammaMode::kFixed) {
    name += std::to_string(fixed_gamma);
  } else {
    name += GammaModeName(gamma_mode);
  }
  return name;
}

void ExperimentPlan::Validate() const {
  if (epochs < 0) throw InvalidConfigError("epochs must be >= 0");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw InvalidConfigError("learning_rate must be positive");
  }
  if (gamma_mode == GammaMode::kFixed &&
      !(fixed_gamma >= 0.0 && fixed_gamma <= 1.0)) {
    throw InvalidConfigError("fixed gamma must lie in [0, 1]");
  }
  if (kind == ModelKind::kApecs &&
      (!(lipschitz_bound > 0.0) || !std::isfinite(lipschitz_bound))) {
    throw InvalidConfigError("lipschitz_bound must be positive");
  }
  if (shape.hidden_layers == 0 || shape.width == 0) {
    throw InvalidConfigError("network needs at least one hidden layer");
  }
  if (lipschitz_pairs < 1) {
    throw InvalidConfigError("lipschitz_pairs must be >= 1");
  }
  gate.Validate();
}

double ResolveGamma(GammaMode mode, double fixed_gamma, double alpha) {
  switch (mode) {
    case GammaMode::kZero:
      return 0.0;
    case GammaMode::kHalf:
      return 0.5;
    case GammaMode::kOptimal:
      return loss::OptimalGamma(alpha);
    case GammaMode::kFixed:
      return fixed_gamma;
  }
  return 0.0;
}

loss::LossBreakdown EvaluateLoss(const Model& model, const Dataset& data,
                                 double gamma) {
  if (data.empty()) throw InvalidInputError("empty dataset");
  LossAccumulator acc;
  for (const Sample& s : data) {
    const CommandVector out = model.Forward(s.z);
    for (std::size_t i = 0; i < kNumCommands; ++i) {
      acc.human += (out[i] - s.z[i]) * (out[i] - s.z[i]);
      acc.expert += (out[i] - s.x_bar[i]) * (out[i] - s.x_bar[i]);
    }
  }
  return acc.Finish(data.size(), gamma);
}

TrainResult Train(const ExperimentPlan& plan, const Dataset& data) {
  plan.Validate();
  if (data.empty()) throw InvalidInputError("empty dataset");

  TrainReport report;
  report.plan = plan;
  report.rmse = std::numeric_limits<double>::quiet_NaN();
  report.alpha = loss::EstimateAlpha(HumanCommands(data), ExpertCommands(data));
  report.gamma = ResolveGamma(plan.gamma_mode, plan.fixed_gamma, report.alpha);
  report.gamma_alpha_clamped =
      loss::OptimalGamma(std::min(report.alpha, 1.0));
  if (report.gamma > 0.0) {
    report.lt_init = loss::InitLipschitz(report.alpha, report.gamma);
    report.lt_init_from_formula =
        loss::InitLipschitzUsesFormula(report.alpha, report.gamma);
  } else {
    report.lt_init = loss::kFallbackInitLipschitz;
  }

  const bool rescaled = plan.kind == ModelKind::kApecs;
  const double alpha_cap = std::log(plan.lipschitz_bound);
  double alpha_scale =
      rescaled ? std::min(std::log(report.lt_init), alpha_cap) : 0.0;
  Model model =
      Model::Create(plan.kind, plan.shape, plan.gate, alpha_scale, plan.seed);

  net::AdamOptions adam;
  adam.learning_rate = plan.learning_rate;
  net::AdamState state = net::AdamState::For(model.network());
  double alpha_m = 0.0;
  double alpha_v = 0.0;

  BatchGradient batch(data, report.gamma);
  net::GradientTape tape = model.network().ZeroTape();
  double d_alpha = 0.0;
  report.loss_curve.reserve(std::size_t(plan.epochs) + 1);
  for (int epoch = 0; epoch <= plan.epochs; ++epoch) {
    const loss::LossBreakdown l = batch.Run(model, tape, d_alpha);
    if (!Finite(l)) {
      throw TrainingDivergedError("non-finite loss", epoch);
    }
    report.loss_curve.push_back(l);
    if (epoch == plan.epochs) break;
    try {
      net::AdamStep(model.mutable_network(), tape, state, adam, epoch + 1);
    } catch (const TrainingDivergedError& e) {
      throw TrainingDivergedError(e.what(), epoch);
    }
    if (rescaled) {
      if (!std::isfinite(d_alpha)) {
        throw TrainingDivergedError("non-finite alpha_scale gradient", epoch);
      }
      double a[1] = {model.controller().alpha_scale()};
      const double g[1] = {d_alpha};
      net::AdamUpdate(a, g, std::span<double>(&alpha_m, 1),
                      std::span<double>(&alpha_v, 1), adam, epoch + 1);
      model.mutable_controller().set_alpha_scale(std::min(a[0], alpha_cap));
    }
  }

  report.alpha_scale = rescaled ? model.controller().alpha_scale() : 0.0;
  report.empirical_lipschitz =
      EmpiricalLipschitz(model, plan.lipschitz_pairs, plan.seed);
  return TrainResult{std::move(report), std::move(model)};
}

}  // namespace apecs::training
