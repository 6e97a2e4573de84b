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

// AArch64 only. NEON is mandatory there, so no runtime probe is needed.

#include "kernels_impl.hpp"

#include <arm_neon.h>

#include <cmath>

namespace kcalpose::simd::detail {

namespace {

void transition_energies_neon(const double* rows, std::size_t n_rows, std::size_t width,
                              const double* weights, double* out) {
  const std::size_t vec_end = width - width % 2;
  for (std::size_t t = 0; t + 1 < n_rows; ++t) {
    const double* prev = rows + t * width;
    const double* curr = prev + width;
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t k = 0;
    for (; k < vec_end; k += 2) {
      const float64x2_t d = vsubq_f64(vld1q_f64(curr + k), vld1q_f64(prev + k));
      const float64x2_t wd = vmulq_f64(vld1q_f64(weights + k), d);
      acc = vfmaq_f64(acc, wd, d);
    }
    double total = vaddvq_f64(acc);
    for (; k < width; ++k) {
      const double d = curr[k] - prev[k];
      total += weights[k] * d * d;
    }
    out[t] = total;
  }
}

double abs_diff_sum_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vaddq_f64(acc, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) total += std::fabs(a[i] - b[i]);
  return total;
}

void accumulate_neon(double* dst, const double* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vaddq_f64(vld1q_f64(dst + i), vld1q_f64(src + i)));
  for (; i < n; ++i) dst[i] += src[i];
}

void scale_neon(double* dst, double factor, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vmulq_n_f64(vld1q_f64(dst + i), factor));
  for (; i < n; ++i) dst[i] *= factor;
}

double sum_neon(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) total += x[i];
  return total;
}

}  // namespace

const KernelTable kNeonTable{
    Isa::kNeon, transition_energies_neon, abs_diff_sum_neon,
    accumulate_neon, scale_neon, sum_neon,
};

}  // namespace kcalpose::simd::detail
