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

#include "apecs/net/network.h"

#include <cmath>
#include <string>

#include "apecs/common/error.h"
#include "apecs/common/random.h"
#include "apecs/net/spectral_norm.h"

namespace apecs::net {

std::string_view ConstraintModeName(ConstraintMode mode) {
  return mode == ConstraintMode::kUnitLipschitz ? "unit-lipschitz"
                                                : "unconstrained";
}

ConstraintMode ParseConstraintMode(std::string_view name) {
  if (name == "unit-lipschitz") return ConstraintMode::kUnitLipschitz;
  if (name == "unconstrained") return ConstraintMode::kUnconstrained;
  throw InvalidInputError("unknown constraint mode '" + std::string(name) +
                          "'");
}

void GradientTape::SetZero() {
  for (auto& w : weights) std::fill(w.data.begin(), w.data.end(), 0.0);
  for (auto& b : biases) std::fill(b.begin(), b.end(), 0.0);
}

void GradientTape::Add(const GradientTape& other, double scale) {
  if (other.weights.size() != weights.size()) {
    throw ShapeError("gradient tapes have different layer counts");
  }
  for (std::size_t l = 0; l < weights.size(); ++l) {
    auto& w = weights[l].data;
    const auto& ow = other.weights[l].data;
    if (w.size() != ow.size() || biases[l].size() != other.biases[l].size()) {
      throw ShapeError("gradient tapes have different layer shapes");
    }
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += scale * ow[i];
    for (std::size_t i = 0; i < biases[l].size(); ++i) {
      biases[l][i] += scale * other.biases[l][i];
    }
  }
}

bool GradientTape::AllFinite() const {
  for (const auto& w : weights) {
    if (!w.AllFinite()) return false;
  }
  for (const auto& b : biases) {
    for (double v : b) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

std::size_t GradientTape::ParameterCount() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    n += weights[l].data.size() + biases[l].size();
  }
  return n;
}

std::vector<double> GradientTape::Flatten() const {
  std::vector<double> out;
  out.reserve(ParameterCount());
  for (std::size_t l = 0; l < weights.size(); ++l) {
    out.insert(out.end(), weights[l].data.begin(), weights[l].data.end());
    out.insert(out.end(), biases[l].begin(), biases[l].end());
  }
  return out;
}

Network::Network(std::vector<DenseLayer> layers, ConstraintMode mode,
                 std::uint64_t seed)
    : layers_(std::move(layers)), mode_(mode), seed_(seed) {
  if (layers_.empty()) throw ShapeError("network needs at least one layer");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    if (layer.weights.empty()) throw ShapeError("layer with empty weights");
    if (layer.bias.size() != layer.out_dim()) {
      throw ShapeError("bias length does not match layer output width");
    }
    if (l > 0 && layer.in_dim() != layers_[l - 1].out_dim()) {
      throw ShapeError("consecutive layer widths do not chain");
    }
    if (mode_ == ConstraintMode::kUnitLipschitz &&
        ActivationLipschitz(layer.activation) > 1.0) {
      throw InvalidConfigError(
          "unit-lipschitz networks need 1-Lipschitz activations");
    }
  }
  Refresh();
}

Network Network::Glorot(std::span<const std::size_t> widths,
                        Activation hidden, Activation output,
                        ConstraintMode mode, std::uint64_t seed) {
  if (widths.size() < 2) throw ShapeError("need at least input and output width");
  Rng rng(seed);
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const std::size_t fan_in = widths[l];
    const std::size_t fan_out = widths[l + 1];
    const double limit = std::sqrt(6.0 / double(fan_in + fan_out));
    DenseLayer layer;
    layer.weights = Matrix(fan_out, fan_in);
    for (double& w : layer.weights.data) w = rng.uniform(-limit, limit);
    layer.bias.assign(fan_out, 0.0);
    layer.activation = (l + 2 == widths.size()) ? output : hidden;
    layers.push_back(std::move(layer));
  }
  return Network(std::move(layers), mode, seed);
}

void Network::CheckInput(std::span<const double> input) const {
  if (input.size() != input_dim()) {
    throw ShapeError("network input has length " +
                     std::to_string(input.size()) + ", expected " +
                     std::to_string(input_dim()));
  }
}

std::vector<double> Network::Forward(std::span<const double> input) const {
  CheckInput(input);
  std::vector<double> current(input.begin(), input.end());
  std::vector<double> next;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    next.resize(layer.out_dim());
    MatVec(layer.weights, current, next);
    const double s = scales_[l];
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = Activate(layer.activation, s * next[i] + layer.bias[i]);
    }
    current.swap(next);
  }
  return current;
}

ForwardRecord Network::ForwardWithRecord(std::span<const double> input) const {
  ForwardRecord rec;
  ForwardInto(input, rec);
  return rec;
}

void Network::ForwardInto(std::span<const double> input,
                          ForwardRecord& rec) const {
  CheckInput(input);
  rec.inputs.resize(layers_.size() + 1);
  rec.pre_activations.resize(layers_.size());
  rec.inputs[0].assign(input.begin(), input.end());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    auto& pre = rec.pre_activations[l];
    auto& post = rec.inputs[l + 1];
    pre.resize(layer.out_dim());
    post.resize(layer.out_dim());
    MatVec(layer.weights, rec.inputs[l], pre);
    const double s = scales_[l];
    for (std::size_t i = 0; i < pre.size(); ++i) {
      pre[i] = s * pre[i] + layer.bias[i];
      post[i] = Activate(layer.activation, pre[i]);
    }
  }
}

GradientTape Network::ZeroTape() const {
  GradientTape tape;
  for (const auto& layer : layers_) {
    tape.weights.emplace_back(layer.out_dim(), layer.in_dim());
    tape.biases.emplace_back(layer.out_dim(), 0.0);
  }
  return tape;
}

GradientTape Network::Backward(const ForwardRecord& record,
                               std::span<const double> output_grad) const {
  GradientTape tape = ZeroTape();
  BackwardAccumulate(record, output_grad, tape);
  return tape;
}

void Network::BackwardAccumulate(const ForwardRecord& record,
                                 std::span<const double> output_grad,
                                 GradientTape& tape,
                                 std::span<double> input_grad) const {
  if (record.pre_activations.size() != layers_.size()) {
    throw ShapeError("forward record does not match network depth");
  }
  if (output_grad.size() != output_dim()) {
    throw ShapeError("output gradient length does not match network output");
  }
  if (tape.weights.size() != layers_.size()) {
    throw ShapeError("gradient tape does not match network depth");
  }
  thread_local std::vector<double> delta;
  thread_local std::vector<double> upstream;
  delta.assign(output_grad.begin(), output_grad.end());
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const auto& layer = layers_[l];
    const auto& pre = record.pre_activations[l];
    const auto& in = record.inputs[l];
    const auto& post = record.inputs[l + 1];
    for (std::size_t i = 0; i < delta.size(); ++i) {
      delta[i] *= ActivateDerivative(layer.activation, pre[i], post[i]);
    }
    const double s = scales_[l];
    Matrix& gw = tape.weights[l];
    auto& gb = tape.biases[l];
    for (std::size_t r = 0; r < layer.out_dim(); ++r) {
      const double d = delta[r];
      gb[r] += d;
      if (d == 0.0) continue;
      double* row = gw.data.data() + r * gw.cols;
      const double sd = s * d;
      for (std::size_t c = 0; c < layer.in_dim(); ++c) row[c] += sd * in[c];
    }
    if (l == 0 && input_grad.empty()) break;
    upstream.resize(layer.in_dim());
    MatTVec(layer.weights, delta, upstream);
    for (double& u : upstream) u *= s;
    delta.swap(upstream);
  }
  if (!input_grad.empty()) {
    if (input_grad.size() != input_dim()) {
      throw ShapeError("input gradient buffer has the wrong length");
    }
    std::copy(delta.begin(), delta.end(), input_grad.begin());
  }
}

void Network::Refresh() {
  scales_.assign(layers_.size(), 1.0);
  lipschitz_ = 1.0;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const double sigma = SpectralNorm(layers_[l].weights);
    if (mode_ == ConstraintMode::kUnitLipschitz && sigma > 0.0) {
      scales_[l] = 1.0 / sigma;
    }
    lipschitz_ *=
        sigma * scales_[l] * ActivationLipschitz(layers_[l].activation);
  }
  RefreshBias();
}

void Network::RefreshBias() {
  const std::vector<double> zero(input_dim(), 0.0);
  bias_at_zero_ = Forward(zero);
}

std::size_t Network::ParameterCount() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) {
    n += layer.weights.data.size() + layer.bias.size();
  }
  return n;
}

}  // namespace apecs::net
