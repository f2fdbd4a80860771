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

#include "apecs/net/matrix.h"

#include <algorithm>
#include <cmath>

#include "apecs/common/error.h"

namespace apecs::net {

Matrix::Matrix(std::size_t r, std::size_t c, std::vector<double> values)
    : rows(r), cols(c), data(std::move(values)) {
  if (data.size() != r * c) {
    throw ShapeError("matrix data size does not match rows*cols");
  }
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::Diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

bool Matrix::AllFinite() const {
  for (double v : data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void MatVec(const Matrix& m, std::span<const double> v, std::span<double> out) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double* row = m.data.data() + r * m.cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < m.cols; ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
}

void MatTVec(const Matrix& m, std::span<const double> v,
             std::span<double> out) {
  for (std::size_t c = 0; c < m.cols; ++c) out[c] = 0.0;
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double* row = m.data.data() + r * m.cols;
    const double vr = v[r];
    for (std::size_t c = 0; c < m.cols; ++c) out[c] += row[c] * vr;
  }
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double Norm2(std::span<const double> v) { return std::sqrt(Dot(v, v)); }

double MaxAbs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace apecs::net
