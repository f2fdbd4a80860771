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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "apecs/common/error.h"
#include "apecs/common/random.h"
#include "apecs/controller/apecs_controller.h"
#include "apecs/controller/gates.h"
#include "test_support.h"

namespace apecs::controller {
namespace {

using ::apecs::testing::CentralDifference;
using ::apecs::testing::ParameterRef;
using ::apecs::testing::RandomNetwork;
using ::apecs::testing::RandomVector;
using ::apecs::testing::RelativeError;
using net::Activation;
using net::ConstraintMode;

GatePair Clip() { return GatePair{GateKind::kClipSoftplus, 4.0}; }
GatePair Algebraic(double b = 4.0) {
  return GatePair{GateKind::kAlgebraicSqrt, b};
}

TEST(SoftplusTest, KnownValues) {
  EXPECT_NEAR(Softplus(0.0), 0.693147, 1e-6);
  EXPECT_LE(Softplus(40.0) - 40.0, 1e-12);
  EXPECT_NEAR(SoftplusPrime(1.0), 1.0 / (1.0 + std::exp(-1.0)), 1e-15);
  EXPECT_NEAR(SoftplusPrime(1.0), 0.731059, 1e-6);
}

TEST(SoftplusTest, StableBeyondThirty) {
  for (double v : {30.5, 31.0, 35.0, 700.0}) {
    EXPECT_NEAR(Softplus(v), v, 1e-13 * v);
    EXPECT_TRUE(std::isfinite(Softplus(v)));
  }
  for (double v : {-30.5, -40.0, -700.0}) {
    EXPECT_NEAR(Softplus(v), std::log1p(std::exp(v)), 1e-13);
    EXPECT_GT(Softplus(v), 0.0);
  }
  EXPECT_NEAR(SoftplusSecond(0.0), 0.25, 1e-15);
}

TEST(SoftplusTest, VectorForms) {
  const std::vector<double> v{-1.0, 0.0, 2.0};
  const auto p = Softplus(v);
  const auto d = SoftplusPrime(v);
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_DOUBLE_EQ(p[i], Softplus(v[i]));
    EXPECT_DOUBLE_EQ(d[i], SoftplusPrime(v[i]));
  }
}

TEST(ClipSaturationTest, Values) {
  EXPECT_EQ(ClipSaturation(0.5), 0.5);
  EXPECT_EQ(ClipSaturation(-3.0), -1.0);
  EXPECT_EQ(ClipSaturation(1.0), 1.0);
  const std::vector<double> v{2.0, -0.25};
  EXPECT_EQ(ClipSaturation(v), (std::vector<double>{1.0, -0.25}));
}

TEST(AlgebraicPairTest, Values) {
  EXPECT_EQ(AlgebraicSaturation(0.0), 0.0);
  EXPECT_LE(std::abs(std::abs(AlgebraicSaturation(1e6)) - 1.0), 1e-12);
  EXPECT_LE(std::abs(std::abs(AlgebraicSaturation(-1e6)) - 1.0), 1e-12);
  EXPECT_DOUBLE_EQ(SqrtShiftPositive(0.0, 4.0), 1.0);
  EXPECT_NEAR(SqrtShiftPositive(2.0, 4.0), (2.0 + std::sqrt(8.0)) / 2.0, 1e-15);
  EXPECT_NEAR(SqrtShiftPositive(2.0, 4.0), 2.414214, 1e-6);
  EXPECT_NEAR(SqrtShiftPositive(0.0, 9.0), 1.5, 1e-15);
}

TEST(AlgebraicPairTest, NegativeArgumentsStayAccurate) {
  // Compare with the rationalized form B / (2 (sqrt(g^2 + B) - g)).
  for (double g : {-1.0, -10.0, -1e4, -1e8}) {
    const double r = std::sqrt(g * g + 4.0);
    EXPECT_NEAR(SqrtShiftPositive(g, 4.0) / (4.0 / (2.0 * (r - g))), 1.0, 1e-12);
    EXPECT_GT(SqrtShiftPositive(g, 4.0), 0.0);
  }
}

TEST(AlgebraicPairTest, RejectsNonPositiveB) {
  EXPECT_THROW(SqrtShiftPositive(1.0, 0.0), InvalidConfigError);
  EXPECT_THROW(SqrtShiftPositive(1.0, -2.0), InvalidConfigError);
  EXPECT_THROW(Algebraic(0.0).Validate(), InvalidConfigError);
}

TEST(GatePairTest, ShapeInvariantsOnGrid) {
  for (const GatePair& gate : {Clip(), Algebraic(1.0), Algebraic(10.0)}) {
    double prev_p = -1.0, prev_dp = -1.0;
    for (double g = -20.0; g <= 20.0; g += 0.01) {
      const double p = gate.Positive(g);
      const double dp = gate.PositivePrime(g);
      EXPECT_GT(p, 0.0);
      EXPECT_GT(p, prev_p);
      EXPECT_GE(dp, prev_dp);
      prev_p = p;
      prev_dp = dp;
    }
    for (double v = -50.0; v <= 50.0; v += 0.05) {
      const double s = gate.Saturate(v);
      EXPECT_LE(std::abs(s), 1.0);
      EXPECT_EQ(s, -gate.Saturate(-v));
    }
    EXPECT_EQ(gate.Saturate(0.0), 0.0);
  }
}

TEST(GatePairTest, DerivativesMatchFiniteDifferences) {
  for (const GatePair& gate : {Clip(), Algebraic(4.0)}) {
    for (double g : {-3.0, -0.4, 0.0, 0.8, 5.0}) {
      const double fd1 = (gate.Positive(g + 1e-6) - gate.Positive(g - 1e-6)) / 2e-6;
      const double fd2 =
          (gate.PositivePrime(g + 1e-6) - gate.PositivePrime(g - 1e-6)) / 2e-6;
      EXPECT_NEAR(gate.PositivePrime(g), fd1, 1e-8);
      EXPECT_NEAR(gate.PositiveSecond(g), fd2, 1e-7);
    }
    for (double v : {-0.7, 0.2, 0.95}) {
      const double fd = (gate.Saturate(v + 1e-6) - gate.Saturate(v - 1e-6)) / 2e-6;
      EXPECT_NEAR(gate.SaturatePrime(v), fd, 1e-8);
    }
  }
  EXPECT_EQ(Clip().SaturatePrime(1.5), 0.0);
  EXPECT_EQ(Clip().SaturatePrime(-1.5), 0.0);
}

TEST(GatePairTest, NamesRoundTrip) {
  for (GateKind k : {GateKind::kClipSoftplus, GateKind::kAlgebraicSqrt}) {
    EXPECT_EQ(ParseGateKind(GateKindName(k)), k);
  }
  EXPECT_THROW(ParseGateKind("sigmoid"), InvalidConfigError);
}

TEST(IdentityGateTargetTest, Examples) {
  EXPECT_EQ(IdentityGateTarget(0.0, 4.0), 0.0);
  EXPECT_EQ(AlgebraicSaturation(SqrtShiftPositive(0.0, 4.0) * 0.0), 0.0);
  EXPECT_NEAR(IdentityGateTarget(0.5, 4.0), 0.288675, 1e-6);
  for (double x : {0.5, 0.9}) {
    const double g = IdentityGateTarget(x, 4.0);
    EXPECT_LE(std::abs(AlgebraicSaturation(SqrtShiftPositive(g, 4.0) * x) - x),
              1e-12);
  }
}

TEST(IdentityGateTargetTest, RoundTripGrid) {
  for (double b : {1.0, 4.0, 10.0}) {
    for (int k = -99; k <= 99; ++k) {
      const double x = k / 100.0;
      const double g = IdentityGateTarget(x, b);
      const double y = AlgebraicSaturation(SqrtShiftPositive(g, b) * x);
      EXPECT_LE(std::abs(y - x), 1e-9) << "x=" << x << " B=" << b;
    }
  }
}

TEST(IdentityGateTargetTest, DomainErrors) {
  EXPECT_THROW(IdentityGateTarget(1.0, 4.0), DomainError);
  EXPECT_THROW(IdentityGateTarget(-1.5, 4.0), DomainError);
}

TEST(LipschitzBoundTest, Examples) {
  EXPECT_NEAR(LipschitzBound(0.0, 0.0, 1.0, Clip()), std::log(2.0), 1e-15);
  const double expected = 1.0 / (1.0 + std::exp(-1.0)) + std::log1p(std::exp(1.0));
  EXPECT_NEAR(LipschitzBound(1.0, 0.0, 1.0, Clip()), expected, 1e-15);
  EXPECT_NEAR(LipschitzBound(1.0, 0.0, 1.0, Clip()), 2.044321, 1e-6);
}

TEST(LipschitzBoundTest, MonotoneInEveryArgument) {
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    const GatePair gate = k % 2 ? Clip() : Algebraic(rng.uniform(0.5, 10.0));
    const double l = rng.uniform(0.0, 5.0);
    const double b = rng.uniform(0.0, 3.0);
    const double c = rng.uniform(0.1, 3.0);
    const double base = LipschitzBound(l, b, c, gate);
    EXPECT_GT(base, 0.0);
    EXPECT_GE(LipschitzBound(l, b, 2.0 * c, gate), base);
    EXPECT_GE(LipschitzBound(l + 0.5, b, c, gate), base);
    EXPECT_GE(LipschitzBound(l, b + 0.5, c, gate), base);
  }
}

TEST(LipschitzBoundTest, RadiusFormReducesToScalarForm) {
  EXPECT_DOUBLE_EQ(LipschitzBound(0.8, 0.3, 1.0, Clip(), 1.0),
                   LipschitzBound(0.8, 0.3, 1.0, Clip()));
  EXPECT_GT(LipschitzBound(0.8, 0.3, 1.0, Clip(), 2.0),
            LipschitzBound(0.8, 0.3, 1.0, Clip()));
}

ApecsController RandomController(std::uint64_t seed, GatePair gate,
                                 double alpha_scale, bool rescale = true) {
  const auto mode =
      rescale ? ConstraintMode::kUnitLipschitz : ConstraintMode::kUnconstrained;
  ApecsOptions opts;
  opts.gate = gate;
  opts.rescale = rescale;
  return ApecsController(RandomNetwork({7, 9, 9, 2}, Activation::kTanh,
                                       Activation::kIdentity, mode, seed),
                         2, alpha_scale, opts);
}

std::vector<double> RandomZ(Rng& rng) { return RandomVector(rng, 7, -1.0, 1.0); }

TEST(LipschitzBoundTest, BoundsSampledPreClipSlope) {
  for (const GatePair& gate : {Clip(), Algebraic(4.0)}) {
    const ApecsController ctrl = RandomController(13, gate, 0.0);
    const double lp = ctrl.Lp();
    Rng rng(14);
    double worst = 0.0;
    for (int k = 0; k < 100000; ++k) {
      auto z1 = RandomZ(rng);
      auto z2 = z1;
      z2[0] = rng.uniform(-1.0, 1.0);
      z2[1] = rng.uniform(-1.0, 1.0);
      const auto g1 = ctrl.network().Forward(z1);
      const auto g2 = ctrl.network().Forward(z2);
      double num = 0.0, den = 0.0;
      for (int i = 0; i < 2; ++i) {
        const double d = gate.Positive(g1[i]) * z1[i] - gate.Positive(g2[i]) * z2[i];
        num += d * d;
        den += (z1[i] - z2[i]) * (z1[i] - z2[i]);
      }
      worst = std::max(worst, std::sqrt(num / den));
    }
    EXPECT_LE(worst, lp) << GateKindName(gate.kind);
  }
}

TEST(ApecsForwardTest, ZeroCommandGivesZero) {
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const ApecsController ctrl =
        RandomController(100 + k, k % 2 ? Clip() : Algebraic(), rng.uniform(-1, 3));
    auto z = RandomZ(rng);
    z[0] = z[1] = 0.0;
    const auto out = ctrl.Forward(z);
    EXPECT_EQ(out[0], 0.0);
    EXPECT_EQ(out[1], 0.0);
  }
}

TEST(ApecsForwardTest, ConstantGateIsScaledSaturation) {
  // All-zero weights: g(z) is the output bias for every input.
  net::DenseLayer layer{net::Matrix(2, 7), {0.4, -0.3}, Activation::kIdentity};
  ApecsOptions opts;
  opts.rescale = false;
  const ApecsController ctrl(net::Network({layer}, ConstraintMode::kUnconstrained),
                             2, 0.0, opts);
  Rng rng(4);
  for (int k = 0; k < 1000; ++k) {
    const auto z = RandomZ(rng);
    const auto out = ctrl.Forward(z);
    EXPECT_DOUBLE_EQ(out[0], ClipSaturation(Softplus(0.4) * z[0]));
    EXPECT_DOUBLE_EQ(out[1], ClipSaturation(Softplus(-0.3) * z[1]));
    EXPECT_EQ(std::signbit(out[0]), std::signbit(z[0]));
    EXPECT_EQ(std::signbit(out[1]), std::signbit(z[1]));
  }
}

TEST(ApecsForwardTest, SectorPropertiesHoldOnRandomDraws) {
  Rng rng(2718);
  for (int c = 0; c < 20; ++c) {
    const GatePair gate = c % 2 ? Clip() : Algebraic(rng.uniform(0.5, 10.0));
    const ApecsController ctrl =
        RandomController(500 + c, gate, rng.uniform(-2.0, 4.0), c % 3 != 0);
    for (int k = 0; k < 5000; ++k) {
      auto z = RandomZ(rng);
      if (k % 7 == 0) z[k % 2] = 0.0;
      const auto out = ctrl.Forward(z);
      for (int i = 0; i < 2; ++i) {
        EXPECT_LE(std::abs(out[i]), 1.0);
        EXPECT_EQ(out[i] == 0.0, z[i] == 0.0);
        if (z[i] != 0.0) EXPECT_EQ(out[i] > 0.0, z[i] > 0.0);
      }
    }
  }
}

TEST(ApecsForwardTest, SampledSlopeRespectsTarget) {
  for (const GatePair& gate : {Clip(), Algebraic(4.0)}) {
    const ApecsController ctrl = RandomController(11, gate, std::log(2.0));
    Rng rng(11);
    double worst = 0.0;
    for (int k = 0; k < 100000; ++k) {
      auto z1 = RandomZ(rng);
      auto z2 = z1;
      z2[0] = rng.uniform(-1.0, 1.0);
      z2[1] = rng.uniform(-1.0, 1.0);
      const auto a = ctrl.Forward(z1);
      const auto b = ctrl.Forward(z2);
      const double num = std::hypot(a[0] - b[0], a[1] - b[1]);
      const double den = std::hypot(z1[0] - z2[0], z1[1] - z2[1]);
      worst = std::max(worst, num / den);
    }
    EXPECT_LE(worst, 2.0 * (1.0 + 1e-4)) << GateKindName(gate.kind);
  }
}

TEST(ApecsForwardTest, SplitInputsMatchConcatenated) {
  const ApecsController ctrl = RandomController(6, Clip(), 0.2);
  const std::vector<double> x{0.3, -0.6}, env{0.1, 0.2, -0.3}, err{0.4, -0.5};
  const std::vector<double> z{0.3, -0.6, 0.1, 0.2, -0.3, 0.4, -0.5};
  EXPECT_EQ(ctrl.Forward(x, env, err), ctrl.Forward(z));
  EXPECT_EQ(ctrl.ForwardWithRecord(z).output, ctrl.Forward(z));
}

TEST(ApecsForwardTest, RejectsCommandsOutsideDomain) {
  const ApecsController ctrl = RandomController(6, Clip(), 0.0);
  std::vector<double> z(7, 0.0);
  z[0] = 1.2;
  EXPECT_THROW(ctrl.Forward(z), DomainError);
  EXPECT_THROW(ctrl.Forward(std::vector<double>(6, 0.0)), ShapeError);
}

// Objective dot(og, x_hat(z)) for gradient checks. Perturbed parameters
// refresh b_theta but keep the layer normalization fixed.
double Objective(ApecsController& ctrl, const std::vector<double>& z,
                 const std::vector<double>& og) {
  ctrl.mutable_network().RefreshBias();
  const auto y = ctrl.Forward(z);
  return std::inner_product(y.begin(), y.end(), og.begin(), 0.0);
}

double ControllerGradientCheck(ApecsController ctrl,
                               const std::vector<double>& z,
                               const std::vector<double>& og) {
  const auto grad = ctrl.Backward(ctrl.ForwardWithRecord(z), og);
  const auto analytic = grad.net.Flatten();
  auto f = [&]() { return Objective(ctrl, z, og); };
  double worst = 0.0;
  for (std::size_t k = 0; k < analytic.size(); ++k) {
    double& p = ParameterRef(ctrl.mutable_network(), k);
    worst = std::max(worst,
                     RelativeError(analytic[k], CentralDifference(f, p, 1e-6), 1e-4));
  }
  double a = ctrl.alpha_scale();
  auto fa = [&]() {
    ctrl.set_alpha_scale(a);
    return Objective(ctrl, z, og);
  };
  const double saved = a;
  a = saved + 1e-6;
  const double up = fa();
  a = saved - 1e-6;
  const double down = fa();
  a = saved;
  ctrl.set_alpha_scale(saved);
  if (ctrl.options().rescale) {
    worst = std::max(worst,
                     RelativeError(grad.alpha_scale, (up - down) / 2e-6, 1e-4));
  }
  return worst;
}

bool Unsaturated(const ApecsController& ctrl, const std::vector<double>& z) {
  const auto rec = ctrl.ForwardWithRecord(z);
  for (double u : rec.pre_clip) {
    if (std::abs(u) > 0.95) return false;
  }
  return true;
}

TEST(ApecsBackwardTest, MatchesFiniteDifferences) {
  Rng rng(8);
  int checked = 0;
  for (int c = 0; checked < 20; ++c) {
    const GatePair gate = c % 2 ? Clip() : Algebraic(4.0);
    const ApecsController ctrl =
        RandomController(900 + c, gate, rng.uniform(-0.5, 1.0), c % 4 != 3);
    const auto z = RandomZ(rng);
    if (!Unsaturated(ctrl, z)) continue;
    const auto og = RandomVector(rng, 2, -1.0, 1.0);
    EXPECT_LE(ControllerGradientCheck(ctrl, z, og), 1e-4) << "config " << c;
    ++checked;
  }
}

TEST(ApecsBackwardTest, SaturatedComponentHasZeroGradient) {
  const ApecsController ctrl = RandomController(12, Clip(), std::log(50.0));
  std::vector<double> z{0.9, 0.0, 0.1, 0.2, 0.3, -0.1, 0.2};
  const auto rec = ctrl.ForwardWithRecord(z);
  ASSERT_GE(std::abs(rec.pre_clip[0]), 1.0);
  const auto grad = ctrl.Backward(rec, std::vector<double>{1.0, 0.0});
  for (double g : grad.net.Flatten()) EXPECT_EQ(g, 0.0);
  EXPECT_EQ(grad.alpha_scale, 0.0);
}

TEST(ApecsBackwardTest, ZeroCommandHasZeroGradient) {
  const ApecsController ctrl = RandomController(12, Algebraic(), 0.3);
  std::vector<double> z{0.0, 0.0, 0.1, 0.2, 0.3, -0.1, 0.2};
  const auto grad =
      ctrl.Backward(ctrl.ForwardWithRecord(z), std::vector<double>{1.0, -1.0});
  for (double g : grad.net.Flatten()) EXPECT_EQ(g, 0.0);
}

}  // namespace
}  // namespace apecs::controller
