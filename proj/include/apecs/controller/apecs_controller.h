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

#ifndef APECS_CONTROLLER_APECS_CONTROLLER_H_
#define APECS_CONTROLLER_APECS_CONTROLLER_H_

#include <cstddef>
#include <span>
#include <vector>

#include "apecs/controller/gates.h"
#include "apecs/net/network.h"

namespace apecs::controller {

// Upper bound on the slope of x -> p(g(z)) * x for |x| <= c:
//   L_p = p'(L_theta c + b) L_theta c + p(L_theta c + b)
// `b_theta_norm` bounds every component of g(0).
double LipschitzBound(double l_theta, double b_theta_norm, double c,
                      const GatePair& gate);

// Same bound when the gate network also sees inputs other than x. The
// argument of p and p' is bounded by L_theta * input_radius + b, where
// input_radius bounds ||z||_2; c still bounds |x_i|. Reduces to the
// four-argument form when input_radius == c.
double LipschitzBound(double l_theta, double b_theta_norm, double c,
                      const GatePair& gate, double input_radius);

struct ApecsOptions {
  GatePair gate;
  // Componentwise bound on the human command x.
  double c = 1.0;
  // Bound on ||z||_2 over the input domain. Zero selects sqrt(input_dim),
  // i.e. every input feature scaled to [-1, 1].
  double input_radius = 0.0;
  // When false the e^alpha / L_p factor is dropped (the unconstrained
  // variant); alpha_scale is then unused.
  bool rescale = true;
};

// Intermediate values of one controller evaluation.
struct ApecsRecord {
  net::ForwardRecord net_record;
  std::vector<double> gate;       // g(z), first n_x components
  std::vector<double> pre_clip;   // u = k p(g) x
  std::vector<double> output;     // s(u)
  std::vector<double> x;
  double gain_scale = 1.0;        // e^alpha / L_p, or 1 without rescale
  double lp = 1.0;
};

struct ApecsGradient {
  net::GradientTape net;
  double alpha_scale = 0.0;
};

// x_hat(z) = s( (e^alpha / L_p) p(g(z)) * x ), z = [x, E, e].
//
// By construction x_hat lies in [-1, 1]^n_x, vanishes exactly when x does,
// keeps the sign of x componentwise, and with rescale on is
// e^alpha-Lipschitz in x.
class ApecsController {
 public:
  // The first n_x network inputs are the human command. The network must
  // have at least n_x outputs; only the first n_x are used as gates.
  ApecsController(net::Network net, std::size_t n_x, double alpha_scale,
                  ApecsOptions options = {});

  std::size_t n_x() const { return n_x_; }
  std::size_t input_dim() const { return net_.input_dim(); }
  const ApecsOptions& options() const { return options_; }
  double alpha_scale() const { return alpha_scale_; }
  void set_alpha_scale(double a) { alpha_scale_ = a; }
  double input_radius() const { return input_radius_; }

  const net::Network& network() const { return net_; }
  // Mutating the network leaves its caches stale until Refresh().
  net::Network& mutable_network() { return net_; }

  // Current L_p computed from the network's cached L_theta and b_theta.
  double Lp() const;
  // e^alpha / L_p with rescale on, otherwise 1.
  double GainScale() const;

  std::vector<double> Forward(std::span<const double> x,
                              std::span<const double> env,
                              std::span<const double> err) const;
  // `z` is the concatenated network input [x, E, e].
  std::vector<double> Forward(std::span<const double> z) const;
  ApecsRecord ForwardWithRecord(std::span<const double> z) const;
  void ForwardInto(std::span<const double> z, ApecsRecord& record) const;

  // Full gradient of dot(output_grad, x_hat) with respect to theta and
  // alpha_scale, including the dependence of L_p on b_theta = g(0). The
  // layer normalization divisors are held constant.
  ApecsGradient Backward(const ApecsRecord& record,
                         std::span<const double> output_grad) const;

  // Batch building blocks: accumulate the per-sample part into `tape` and
  // the running sums of d/d alpha and d/d L_p, then call
  // ApplyLpChain() once with the summed d/d L_p.
  void AccumulateGradient(const ApecsRecord& record,
                          std::span<const double> output_grad,
                          net::GradientTape& tape, double& d_alpha,
                          double& d_lp) const;
  void ApplyLpChain(double d_lp, net::GradientTape& tape) const;

 private:
  void CheckInput(std::span<const double> z) const;
  double BiasNorm() const;

  net::Network net_;
  std::size_t n_x_;
  double alpha_scale_;
  ApecsOptions options_;
  double input_radius_;
};

}  // namespace apecs::controller

#endif  // APECS_CONTROLLER_APECS_CONTROLLER_H_
