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

#ifndef APECS_NET_ACTIVATION_H_
#define APECS_NET_ACTIVATION_H_

#include <string>
#include <string_view>

namespace apecs::net {

enum class Activation { kIdentity, kRelu, kTanh, kGelu };

double Activate(Activation a, double x);
// Derivative with respect to the pre-activation. ReLU uses 0 at the kink.
double ActivateDerivative(Activation a, double x);
// Derivative at `x` given the already computed value y = Activate(a, x).
double ActivateDerivative(Activation a, double x, double y);
// Global Lipschitz constant of the scalar activation.
double ActivationLipschitz(Activation a);

std::string_view ActivationName(Activation a);
// Throws InvalidInputError for unknown names.
Activation ParseActivation(std::string_view name);

}  // namespace apecs::net

#endif  // APECS_NET_ACTIVATION_H_
