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

#include <cstdlib>
#include <string_view>

#include "kcalpose/error.hpp"
#include "kernels_impl.hpp"

namespace kcalpose::simd {

namespace {

bool cpu_has_vector_isa() noexcept {
#if defined(KCALPOSE_HAVE_AVX2)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#elif defined(KCALPOSE_HAVE_NEON)
  return true;
#else
  return false;
#endif
}

const KernelTable* detect_vector() noexcept {
  if (!cpu_has_vector_isa()) return nullptr;
#if defined(KCALPOSE_HAVE_AVX2)
  return &detail::kAvx2Table;
#elif defined(KCALPOSE_HAVE_NEON)
  return &detail::kNeonTable;
#else
  return nullptr;
#endif
}

const KernelTable& select() noexcept {
  if (const char* env = std::getenv("KCALPOSE_SIMD"); env != nullptr && std::string_view(env) == "scalar") {
    return detail::kScalarTable;
  }
  const KernelTable* vec = detect_vector();
  return vec != nullptr ? *vec : detail::kScalarTable;
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorKind::kLengthMismatch, "kernel operands differ in length");
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

const KernelTable& scalar() noexcept { return detail::kScalarTable; }

const KernelTable* vector_or_null() noexcept {
  static const KernelTable* table = detect_vector();
  return table;
}

void transition_energies(std::span<const double> rows, std::size_t width,
                         std::span<const double> weights, std::span<double> out) {
  if (width == 0 || rows.size() % width != 0) {
    throw Error(ErrorKind::kShapeMismatch, "row buffer is not a whole number of rows");
  }
  require_same_size(weights.size(), width);
  const std::size_t n_rows = rows.size() / width;
  require_same_size(out.size(), n_rows == 0 ? 0 : n_rows - 1);
  active().transition_energies(rows.data(), n_rows, width, weights.data(), out.data());
}

double abs_diff_sum(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size());
  return active().abs_diff_sum(a.data(), b.data(), a.size());
}

void accumulate(std::span<double> dst, std::span<const double> src) {
  require_same_size(dst.size(), src.size());
  active().accumulate(dst.data(), src.data(), dst.size());
}

void scale(std::span<double> dst, double factor) { active().scale(dst.data(), factor, dst.size()); }

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

}  // namespace kcalpose::simd
