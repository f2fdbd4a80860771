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

#include "apecs/net/spectral_norm.h"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "apecs/common/error.h"

namespace apecs::net {
namespace {

using Square = std::vector<double>;  // n x n, row-major

// G = W^T W when cols <= rows, otherwise W W^T.
Square Gram(const Matrix& w, bool by_cols) {
  const std::size_t n = by_cols ? w.cols : w.rows;
  Square g(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      if (by_cols) {
        for (std::size_t r = 0; r < w.rows; ++r) acc += w(r, i) * w(r, j);
      } else {
        for (std::size_t c = 0; c < w.cols; ++c) acc += w(i, c) * w(j, c);
      }
      g[i * n + j] = acc;
      g[j * n + i] = acc;
    }
  }
  return g;
}

// p <- p * p / max|p * p|. Returns false when the product vanishes.
bool SquareInPlace(Square& p, std::size_t n, Square& tmp) {
  tmp.assign(n * n, 0.0);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double a = p[i * n + k];
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) tmp[i * n + j] += a * p[k * n + j];
    }
  }
  for (double v : tmp) peak = std::max(peak, std::abs(v));
  if (!(peak > 0.0) || !std::isfinite(peak)) return false;
  for (std::size_t i = 0; i < n * n; ++i) p[i] = tmp[i] / peak;
  return true;
}

// ||W v|| / ||v|| (or ||W^T v|| / ||v|| for the row Gram); 0 for v = 0.
double Rayleigh(const Matrix& w, bool by_cols, std::span<const double> v,
                std::vector<double>& out) {
  const double nv = Norm2(v);
  if (nv == 0.0) return 0.0;
  if (by_cols) {
    out.resize(w.rows);
    MatVec(w, v, out);
  } else {
    out.resize(w.cols);
    MatTVec(w, v, out);
  }
  return Norm2(out) / nv;
}

double BestEstimate(const Matrix& w, bool by_cols, const Square& p, std::size_t n,
                    std::vector<double>& v, std::vector<double>& out) {
  // Image of the all-ones vector.
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += p[i * n + j];
    v[i] = acc;
  }
  double best = Rayleigh(w, by_cols, v, out);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) v[i] = p[i * n + j];
    best = std::max(best, Rayleigh(w, by_cols, v, out));
  }
  return best;
}

}  // namespace

double SpectralNorm(const Matrix& weights, int max_iters, double tol) {
  if (weights.empty()) throw InvalidInputError("spectral norm of empty matrix");
  if (!weights.AllFinite()) {
    throw InvalidInputError("spectral norm of non-finite matrix");
  }
  if (max_iters < 1) throw InvalidInputError("max_iters must be >= 1");

  const bool by_cols = weights.cols <= weights.rows;
  const std::size_t n = by_cols ? weights.cols : weights.rows;
  Square p = Gram(weights, by_cols);
  Square tmp;
  std::vector<double> v(n), out;

  double sigma = BestEstimate(weights, by_cols, p, n, v, out);
  if (sigma == 0.0) return 0.0;
  for (int it = 0; it < max_iters; ++it) {
    if (!SquareInPlace(p, n, tmp)) break;
    const double next = std::max(sigma, BestEstimate(weights, by_cols, p, n, v, out));
    const bool converged = next - sigma <= tol * next;
    sigma = next;
    if (converged) break;
  }
  return sigma;
}

}  // namespace apecs::net
