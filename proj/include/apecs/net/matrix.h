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

#ifndef APECS_NET_MATRIX_H_
#define APECS_NET_MATRIX_H_

#include <cstddef>
#include <span>
#include <vector>

namespace apecs::net {

// Dense row-major matrix. Sized for the small layers used here; no BLAS.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}
  Matrix(std::size_t r, std::size_t c, std::vector<double> values);

  static Matrix Identity(std::size_t n);
  static Matrix Diagonal(std::span<const double> diag);

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }

  bool empty() const { return data.empty(); }
  bool AllFinite() const;

  std::span<const double> Row(std::size_t r) const {
    return {data.data() + r * cols, cols};
  }
};

// out = m * v
void MatVec(const Matrix& m, std::span<const double> v, std::span<double> out);
// out = m^T * v
void MatTVec(const Matrix& m, std::span<const double> v, std::span<double> out);

double Dot(std::span<const double> a, std::span<const double> b);
double Norm2(std::span<const double> v);
double MaxAbs(std::span<const double> v);

}  // namespace apecs::net

#endif  // APECS_NET_MATRIX_H_
