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

#include "apecs/controller/apecs_controller.h"

#include <cmath>
#include <string>

#include "apecs/common/error.h"
#include "apecs/net/matrix.h"

namespace apecs::controller {

double LipschitzBound(double l_theta, double b_theta_norm, double c,
                      const GatePair& gate) {
  return LipschitzBound(l_theta, b_theta_norm, c, gate, c);
}

double LipschitzBound(double l_theta, double b_theta_norm, double c,
                      const GatePair& gate, double input_radius) {
  const double arg = l_theta * input_radius + b_theta_norm;
  return gate.PositivePrime(arg) * l_theta * c + gate.Positive(arg);
}

ApecsController::ApecsController(net::Network net, std::size_t n_x,
                                 double alpha_scale, ApecsOptions options)
    : net_(std::move(net)),
      n_x_(n_x),
      alpha_scale_(alpha_scale),
      options_(options) {
  options_.gate.Validate();
  if (n_x_ == 0 || n_x_ > net_.input_dim() || n_x_ > net_.output_dim()) {
    throw ShapeError("n_x must be positive and fit the network's inputs and "
                     "outputs");
  }
  if (!(options_.c > 0.0)) throw InvalidConfigError("c must be positive");
  input_radius_ = options_.input_radius > 0.0
                      ? options_.input_radius
                      : std::sqrt(double(net_.input_dim()));
  if (input_radius_ < options_.c) {
    throw InvalidConfigError("input radius must be at least c");
  }
}

double ApecsController::BiasNorm() const {
  const auto& b = net_.bias_at_zero();
  return net::MaxAbs(std::span<const double>(b.data(), n_x_));
}

double ApecsController::Lp() const {
  return LipschitzBound(net_.lipschitz(), BiasNorm(), options_.c,
                        options_.gate, input_radius_);
}

double ApecsController::GainScale() const {
  return options_.rescale ? std::exp(alpha_scale_) / Lp() : 1.0;
}

void ApecsController::CheckInput(std::span<const double> z) const {
  if (z.size() != net_.input_dim()) {
    throw ShapeError("controller input has length " + std::to_string(z.size()) +
                     ", expected " + std::to_string(net_.input_dim()));
  }
  for (std::size_t i = 0; i < n_x_; ++i) {
    if (!(std::abs(z[i]) <= 1.0)) {
      throw DomainError("human command component outside [-1, 1]");
    }
  }
  if (options_.rescale && net::Norm2(z) > input_radius_ * (1.0 + 1e-12)) {
    throw DomainError("controller input outside the certified input radius");
  }
}

std::vector<double> ApecsController::Forward(
    std::span<const double> x, std::span<const double> env,
    std::span<const double> err) const {
  if (x.size() != n_x_) throw ShapeError("human command has the wrong length");
  std::vector<double> z;
  z.reserve(x.size() + env.size() + err.size());
  z.insert(z.end(), x.begin(), x.end());
  z.insert(z.end(), env.begin(), env.end());
  z.insert(z.end(), err.begin(), err.end());
  return Forward(z);
}

std::vector<double> ApecsController::Forward(std::span<const double> z) const {
  CheckInput(z);
  const std::vector<double> g = net_.Forward(z);
  const double scale = GainScale();
  std::vector<double> out(n_x_);
  for (std::size_t i = 0; i < n_x_; ++i) {
    out[i] = options_.gate.Saturate(scale * options_.gate.Positive(g[i]) * z[i]);
  }
  return out;
}

ApecsRecord ApecsController::ForwardWithRecord(
    std::span<const double> z) const {
  ApecsRecord rec;
  ForwardInto(z, rec);
  return rec;
}

void ApecsController::ForwardInto(std::span<const double> z,
                                  ApecsRecord& rec) const {
  CheckInput(z);
  net_.ForwardInto(z, rec.net_record);
  const auto g = rec.net_record.output();
  rec.lp = options_.rescale ? Lp() : 1.0;
  rec.gain_scale = GainScale();
  rec.gate.assign(g.begin(), g.begin() + n_x_);
  rec.x.assign(z.begin(), z.begin() + n_x_);
  rec.pre_clip.resize(n_x_);
  rec.output.resize(n_x_);
  for (std::size_t i = 0; i < n_x_; ++i) {
    rec.pre_clip[i] = rec.gain_scale * options_.gate.Positive(g[i]) * z[i];
    rec.output[i] = options_.gate.Saturate(rec.pre_clip[i]);
  }
}

void ApecsController::AccumulateGradient(const ApecsRecord& record,
                                         std::span<const double> output_grad,
                                         net::GradientTape& tape,
                                         double& d_alpha, double& d_lp) const {
  if (output_grad.size() != n_x_) {
    throw ShapeError("controller output gradient has the wrong length");
  }
  thread_local std::vector<double> d_gate;
  d_gate.assign(net_.output_dim(), 0.0);
  bool any = false;
  for (std::size_t i = 0; i < n_x_; ++i) {
    const double du =
        output_grad[i] * options_.gate.SaturatePrime(record.pre_clip[i]);
    if (du == 0.0) continue;
    any = true;
    d_gate[i] = du * record.gain_scale *
                options_.gate.PositivePrime(record.gate[i]) * record.x[i];
    if (options_.rescale) {
      d_alpha += du * record.pre_clip[i];
      d_lp -= du * record.pre_clip[i] / record.lp;
    }
  }
  if (any) net_.BackwardAccumulate(record.net_record, d_gate, tape);
}

void ApecsController::ApplyLpChain(double d_lp, net::GradientTape& tape) const {
  if (!options_.rescale || d_lp == 0.0) return;
  const auto& b = net_.bias_at_zero();
  std::size_t k = 0;
  for (std::size_t i = 1; i < n_x_; ++i) {
    if (std::abs(b[i]) > std::abs(b[k])) k = i;
  }
  if (b[k] == 0.0) return;  // subgradient 0 at the kink of |.|
  const double l_theta = net_.lipschitz();
  const double arg = l_theta * input_radius_ + std::abs(b[k]);
  const double dlp_db = options_.gate.PositiveSecond(arg) * l_theta *
                            options_.c +
                        options_.gate.PositivePrime(arg);
  std::vector<double> d_out(net_.output_dim(), 0.0);
  d_out[k] = d_lp * dlp_db * (b[k] > 0.0 ? 1.0 : -1.0);
  const std::vector<double> zero(net_.input_dim(), 0.0);
  net_.BackwardAccumulate(net_.ForwardWithRecord(zero), d_out, tape);
}

ApecsGradient ApecsController::Backward(
    const ApecsRecord& record, std::span<const double> output_grad) const {
  ApecsGradient grad{net_.ZeroTape(), 0.0};
  double d_lp = 0.0;
  AccumulateGradient(record, output_grad, grad.net, grad.alpha_scale, d_lp);
  ApplyLpChain(d_lp, grad.net);
  return grad;
}

}  // namespace apecs::controller
