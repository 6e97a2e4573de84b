// Copyright 2026 The kcalpose Authors. All Rights Reserved.
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

#include "kernels_impl.hpp"

#include <cmath>

namespace kcalpose::simd::detail {

namespace {

void transition_energies_scalar(const double* rows, std::size_t n_rows, std::size_t width,
                                const double* weights, double* out) {
  for (std::size_t t = 0; t + 1 < n_rows; ++t) {
    const double* prev = rows + t * width;
    const double* curr = prev + width;
    double acc = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
      const double d = curr[k] - prev[k];
      acc += weights[k] * d * d;
    }
    out[t] = acc;
  }
}

double abs_diff_sum_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(a[i] - b[i]);
  return acc;
}

void accumulate_scalar(double* dst, const double* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
}

void scale_scalar(double* dst, double factor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] *= factor;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

}  // namespace

const KernelTable kScalarTable{
    Isa::kScalar, transition_energies_scalar, abs_diff_sum_scalar,
    accumulate_scalar, scale_scalar, sum_scalar,
};

}  // namespace kcalpose::simd::detail
