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

// Predictor interface, overlapping sliding windows and average fusion of
// per-window outputs.

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kcalpose/kinetics.hpp"
#include "kcalpose/pose.hpp"
#include "kcalpose/softlabel.hpp"

namespace kcalpose {

struct WindowSpec {
  std::size_t window_len = 16;
  std::size_t overlap = 6;

  // Requires 2 <= window_len and overlap < window_len.
  void validate() const;
  std::size_t stride() const noexcept { return window_len - overlap; }
};

struct FrameRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const FrameRange&, const FrameRange&) = default;
};

// Windows start at 0, stride, 2*stride, ... while they fit; if frames remain
// after the last fitting window, one more window is anchored to end at F.
// A sequence shorter than the window yields a single window covering it.
std::vector<FrameRange> window_ranges(std::size_t frame_count, const WindowSpec& spec);

std::vector<SkeletonSequence> sliding_windows(const SkeletonSequence& seq, const WindowSpec& spec);

using WindowOutput = std::variant<double, CalorieDistribution>;

// K >= 1 per-window outputs of a single kind, in window order.
class WindowPredictions {
 public:
  explicit WindowPredictions(std::vector<WindowOutput> outputs);

  std::size_t size() const noexcept { return outputs_.size(); }
  bool is_distribution() const noexcept { return std::holds_alternative<CalorieDistribution>(outputs_.front()); }
  const std::vector<WindowOutput>& outputs() const noexcept { return outputs_; }

 private:
  std::vector<WindowOutput> outputs_;
};

// Arithmetic mean of scalars, or bin-wise mean of distributions (summed in
// window order, then renormalised).
WindowOutput fuse_average(const WindowPredictions& preds);

// Maps one clip to an hourly caloric rate.
class ScalarPredictor {
 public:
  virtual ~ScalarPredictor() = default;
  virtual double predict(const SkeletonSequence& seq) const = 0;
};

// Non-learned baseline: the same body-movement computation that drives the
// sample-level annotations.
class SkeletonForwardPredictor final : public ScalarPredictor {
 public:
  SkeletonForwardPredictor(BodyModel model, ConversionConfig conversion);
  double predict(const SkeletonSequence& seq) const override;

 private:
  BodyModel model_;
  ConversionConfig conversion_;
};

double skeleton_forward_predictor(const SkeletonSequence& seq, const BodyModel& model,
                                  const ConversionConfig& conversion);

// Runs `predictor` on every window and fuses the outputs by averaging.
double predict_windowed(const ScalarPredictor& predictor, const SkeletonSequence& seq, const WindowSpec& spec);

struct ScalarPrediction {
  std::string sample_id;
  double kcal_per_hour = 0.0;
};

// `sample_id,kcal_per_hour`
std::string format_predictions(std::span<const ScalarPrediction> predictions);
std::vector<ScalarPrediction> load_predictions(const std::filesystem::path& path);

}  // namespace kcalpose
