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

#pragma once

// Data-parallel inner loops shared by the kinetics, soft-label, fusion and
// metric code. Every kernel has a scalar reference implementation; vector
// variants (AVX2+FMA on x86-64, NEON on AArch64) are selected once at runtime
// and must agree with the reference to within rounding (see test_simd).
//
// Setting the environment variable KCALPOSE_SIMD=scalar forces the reference
// kernels.

#include <cstddef>
#include <span>
#include <string_view>

namespace kcalpose::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;

  // out[t] = sum_k weights[k] * (rows[(t+1)*width + k] - rows[t*width + k])^2
  // for t in [0, n_rows - 1). Lanes are reduced in a fixed order that depends
  // only on width, so the result per transition is a function of the squared
  // differences alone.
  void (*transition_energies)(const double* rows, std::size_t n_rows, std::size_t width,
                              const double* weights, double* out);

  // sum_i |a[i] - b[i]|
  double (*abs_diff_sum)(const double* a, const double* b, std::size_t n);

  // dst[i] += src[i]; element-wise, no reassociation.
  void (*accumulate)(double* dst, const double* src, std::size_t n);

  // dst[i] *= factor
  void (*scale)(double* dst, double factor, std::size_t n);

  double (*sum)(const double* x, std::size_t n);
};

// Kernels picked for this process (highest ISA the CPU supports, unless
// overridden through KCALPOSE_SIMD).
const KernelTable& active() noexcept;

const KernelTable& scalar() noexcept;

// Vector table usable on this machine, or nullptr when none was compiled in or
// the CPU lacks the instructions.
const KernelTable* vector_or_null() noexcept;

// Span front-ends over active().
void transition_energies(std::span<const double> rows, std::size_t width,
                         std::span<const double> weights, std::span<double> out);
double abs_diff_sum(std::span<const double> a, std::span<const double> b);
void accumulate(std::span<double> dst, std::span<const double> src);
void scale(std::span<double> dst, double factor);
double sum(std::span<const double> x);

}  // namespace kcalpose::simd
