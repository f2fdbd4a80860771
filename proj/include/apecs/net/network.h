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

#ifndef APECS_NET_NETWORK_H_
#define APECS_NET_NETWORK_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "apecs/net/activation.h"
#include "apecs/net/matrix.h"

namespace apecs::net {

enum class ConstraintMode { kUnconstrained, kUnitLipschitz };

std::string_view ConstraintModeName(ConstraintMode mode);
ConstraintMode ParseConstraintMode(std::string_view name);

struct DenseLayer {
  Matrix weights;  // out_dim x in_dim
  std::vector<double> bias;
  Activation activation = Activation::kIdentity;

  std::size_t in_dim() const { return weights.cols; }
  std::size_t out_dim() const { return weights.rows; }
};

// Per-parameter gradient buffers, shape-congruent with a Network.
struct GradientTape {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;

  void SetZero();
  void Add(const GradientTape& other, double scale = 1.0);
  bool AllFinite() const;
  std::size_t ParameterCount() const;
  // Concatenation of every layer's weights then bias, in layer order.
  std::vector<double> Flatten() const;
};

// Activations recorded by a forward pass, consumed by Backward().
struct ForwardRecord {
  // inputs[i] is the input of layer i; inputs.back() is the network output.
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> pre_activations;

  std::span<const double> output() const { return inputs.back(); }
};

// Dense feed-forward network g(z). In unit-Lipschitz mode every layer's weight
// matrix is applied divided by its power-iteration spectral norm, so with
// 1-Lipschitz activations the whole map is certified 1-Lipschitz.
//
// The normalization divisors, the Lipschitz constant and the bias g(0) are
// cached; call Refresh() after changing parameters.
class Network {
 public:
  Network(std::vector<DenseLayer> layers, ConstraintMode mode,
          std::uint64_t seed = 0);

  // Uniform Glorot initialization with zero biases. `widths` lists the input
  // width, every hidden width and the output width.
  static Network Glorot(std::span<const std::size_t> widths,
                        Activation hidden, Activation output,
                        ConstraintMode mode, std::uint64_t seed);

  std::size_t input_dim() const { return layers_.front().in_dim(); }
  std::size_t output_dim() const { return layers_.back().out_dim(); }
  std::size_t num_layers() const { return layers_.size(); }
  ConstraintMode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }

  const std::vector<DenseLayer>& layers() const { return layers_; }
  // Mutable access leaves the caches stale until Refresh()/RefreshBias().
  std::vector<DenseLayer>& mutable_layers() { return layers_; }

  // Multiplier applied to layer i's weights (1/sigma in unit-Lipschitz mode).
  double layer_scale(std::size_t i) const { return scales_[i]; }
  // Certified Lipschitz constant L_theta of the whole network.
  double lipschitz() const { return lipschitz_; }
  // b_theta = g(0).
  const std::vector<double>& bias_at_zero() const { return bias_at_zero_; }

  std::vector<double> Forward(std::span<const double> input) const;
  ForwardRecord ForwardWithRecord(std::span<const double> input) const;
  // Same as ForwardWithRecord but reuses the buffers already in `record`.
  void ForwardInto(std::span<const double> input, ForwardRecord& record) const;

  // Gradient of dot(output_grad, g(z)) with respect to every parameter. The
  // normalization divisors are held constant.
  GradientTape Backward(const ForwardRecord& record,
                        std::span<const double> output_grad) const;
  // As Backward(), accumulating into `tape`. Returns d/dz when `input_grad`
  // is non-empty.
  void BackwardAccumulate(const ForwardRecord& record,
                          std::span<const double> output_grad,
                          GradientTape& tape,
                          std::span<double> input_grad = {}) const;

  GradientTape ZeroTape() const;

  // Recomputes normalization divisors, the Lipschitz constant and g(0).
  void Refresh();
  // Recomputes only g(0), keeping the current divisors.
  void RefreshBias();

  std::size_t ParameterCount() const;

 private:
  void CheckInput(std::span<const double> input) const;

  std::vector<DenseLayer> layers_;
  ConstraintMode mode_;
  std::uint64_t seed_;
  std::vector<double> scales_;
  double lipschitz_ = 0.0;
  std::vector<double> bias_at_zero_;
};

}  // namespace apecs::net

#endif  // APECS_NET_NETWORK_H_
