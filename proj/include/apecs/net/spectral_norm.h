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

#ifndef APECS_NET_SPECTRAL_NORM_H_
#define APECS_NET_SPECTRAL_NORM_H_

#include "apecs/net/matrix.h"

namespace apecs::net {

struct PowerIterationOptions {
  int max_iters = 100;
  double tol = 1e-9;
};

// Largest singular value by power iteration with repeated squaring on the
// smaller Gram matrix G of W: iteration k forms G^(2^k), and the estimate is
// the best Rayleigh value ||W v|| / ||v|| over the image of the all-ones
// vector and the columns of G^(2^k). Stops when the relative change of the
// estimate drops below `tol` or after `max_iters` squarings.
//
// Throws InvalidInputError on empty or non-finite input, or max_iters < 1.
double SpectralNorm(const Matrix& weights, int max_iters, double tol);

inline double SpectralNorm(const Matrix& weights,
                           const PowerIterationOptions& opts = {}) {
  return SpectralNorm(weights, opts.max_iters, opts.tol);
}

}  // namespace apecs::net

#endif  // APECS_NET_SPECTRAL_NORM_H_
