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

// Portable randomness. std::mt19937_64's output sequence is fixed by the
// standard, but the std distributions and std::shuffle are not, so the
// derived draws are spelled out here:
//
//   uniform01(g)    = (g() >> 11) * 2^-53                     in [0, 1)
//   bounded(g, n)   = rejection sampling: draw x = g() until
//                     x >= (2^64 mod n), return x mod n        in [0, n)
//   shuffle(g, v)   = Fisher-Yates, for i = n-1 down to 1:
//                     swap(v[i], v[bounded(g, i+1)])
//
// Any implementation following these three rules with the same seed
// reproduces our split manifests and baseline streams exactly.

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace kcalpose::rng {

using Engine = std::mt19937_64;

inline double uniform01(Engine& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline double uniform(Engine& g, double lo, double hi) { return lo + (hi - lo) * uniform01(g); }

inline std::uint64_t bounded(Engine& g, std::uint64_t n) {
  // (2^64 - n) mod n == 2^64 mod n in unsigned arithmetic.
  const std::uint64_t reject_below = (0 - n) % n;
  std::uint64_t x = g();
  while (x < reject_below) x = g();
  return x % n;
}

template <typename T>
void shuffle(Engine& g, std::span<T> items) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded(g, i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace kcalpose::rng
