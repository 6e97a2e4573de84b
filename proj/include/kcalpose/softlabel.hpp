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

// Discretised Gaussian soft labels over calorie bins and the KL objective
// between a target and a predicted bin distribution.

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kcalpose {

struct SoftLabelCodec {
  std::size_t n_bins = 1000;  // bins 0..n_bins-1, value of bin n = n * resolution
  double resolution = 1.0;    // kcal per bin
  double sigma = 5.0;         // kcal

  void validate() const;

  // Nearest bin to a kcal value, clamped to the last bin. Throws
  // OutOfRangeLabel outside [0, n_bins * resolution].
  std::size_t bin_of(double kcal) const;
};

// Non-negative, finite, sums to 1 within 1e-9.
class CalorieDistribution {
 public:
  static constexpr double kNormTolerance = 1e-9;

  explicit CalorieDistribution(std::vector<double> probs);

  // Scales arbitrary non-negative weights to sum to one.
  static CalorieDistribution normalized(std::vector<double> weights);

  static CalorieDistribution delta(std::size_t n_bins, std::size_t bin);
  static CalorieDistribution uniform(std::size_t n_bins);

  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](std::size_t n) const noexcept { return probs_[n]; }

 private:
  std::vector<double> probs_;
};

// exp(-(n*res - l)^2 / (2 sigma^2)) over the bins, renormalised over the
// discrete support.
CalorieDistribution encode(double kcal, const SoftLabelCodec& codec);

inline constexpr double kLogFloor = 1e-12;

// sum_n target[n] * (log target[n] - log max(pred[n], floor_n)) with
// floor_n = min(1e-12, target[n]); bins with target[n] == 0 contribute 0.
double kl_loss(const CalorieDistribution& pred, const CalorieDistribution& target);

enum class Decoding { kExpectation, kArgmax };

double decode(const CalorieDistribution& dist, const SoftLabelCodec& codec,
              Decoding mode = Decoding::kExpectation);

// Shannon entropy in nats.
double entropy(const CalorieDistribution& dist);

// Debug dump: for each sample a `# sample_id=<id>` line, a `bin,prob` header
// and one row per bin.
std::string format_distribution_dump(std::span<const std::pair<std::string, CalorieDistribution>> dists);
std::vector<std::pair<std::string, CalorieDistribution>> load_distribution_dump(const std::filesystem::path& path);

}  // namespace kcalpose
