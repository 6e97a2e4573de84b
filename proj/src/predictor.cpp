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

#include "kcalpose/predictor.hpp"

#include "kcalpose/error.hpp"
#include "kcalpose/io.hpp"
#include "kcalpose/simd/kernels.hpp"

namespace kcalpose {

void WindowSpec::validate() const {
  if (window_len < 2) throw Error(ErrorKind::kInvalidSpec, "window length must be >= 2 frames");
  if (overlap >= window_len) throw Error(ErrorKind::kInvalidSpec, "overlap must be smaller than the window");
}

std::vector<FrameRange> window_ranges(std::size_t frame_count, const WindowSpec& spec) {
  spec.validate();
  if (frame_count < 2) throw Error(ErrorKind::kInvalidSpec, "sequence needs at least 2 frames");
  if (frame_count <= spec.window_len) return {{0, frame_count}};
  std::vector<FrameRange> out;
  std::size_t start = 0;
  for (; start + spec.window_len <= frame_count; start += spec.stride()) {
    out.push_back({start, start + spec.window_len});
  }
  if (out.back().end < frame_count) out.push_back({frame_count - spec.window_len, frame_count});
  return out;
}

std::vector<SkeletonSequence> sliding_windows(const SkeletonSequence& seq, const WindowSpec& spec) {
  std::vector<SkeletonSequence> out;
  for (const auto& r : window_ranges(seq.frame_count(), spec)) out.push_back(seq.slice(r.begin, r.end));
  return out;
}

WindowPredictions::WindowPredictions(std::vector<WindowOutput> outputs) : outputs_(std::move(outputs)) {
  if (outputs_.empty()) throw Error(ErrorKind::kEmptyInput, "no window outputs");
  const auto kind = outputs_.front().index();
  for (const auto& o : outputs_) {
    if (o.index() != kind) throw Error(ErrorKind::kHeterogeneousOutputs, "mixed scalar and distribution outputs");
  }
  if (is_distribution()) {
    const auto bins = std::get<CalorieDistribution>(outputs_.front()).size();
    for (const auto& o : outputs_) {
      if (std::get<CalorieDistribution>(o).size() != bins) {
        throw Error(ErrorKind::kHeterogeneousOutputs, "window distributions differ in bin count");
      }
    }
  }
}

WindowOutput fuse_average(const WindowPredictions& preds) {
  const auto& outs = preds.outputs();
  const double inv_k = 1.0 / static_cast<double>(outs.size());
  if (!preds.is_distribution()) {
    double total = 0.0;
    for (const auto& o : outs) total += std::get<double>(o);
    return total * inv_k;
  }
  const auto& first = std::get<CalorieDistribution>(outs.front());
  std::vector<double> acc(first.probs().begin(), first.probs().end());
  for (std::size_t k = 1; k < outs.size(); ++k) simd::accumulate(acc, std::get<CalorieDistribution>(outs[k]).probs());
  simd::scale(acc, inv_k);
  return CalorieDistribution::normalized(std::move(acc));
}

SkeletonForwardPredictor::SkeletonForwardPredictor(BodyModel model, ConversionConfig conversion)
    : model_(std::move(model)), conversion_(conversion) {
  conversion_.validate();
}

double SkeletonForwardPredictor::predict(const SkeletonSequence& seq) const {
  return sequence_hourly_kcal(seq, model_, conversion_).hourly_kcal;
}

double skeleton_forward_predictor(const SkeletonSequence& seq, const BodyModel& model,
                                  const ConversionConfig& conversion) {
  return sequence_hourly_kcal(seq, model, conversion).hourly_kcal;
}

double predict_windowed(const ScalarPredictor& predictor, const SkeletonSequence& seq, const WindowSpec& spec) {
  std::vector<WindowOutput> outs;
  for (const auto& window : sliding_windows(seq, spec)) outs.emplace_back(predictor.predict(window));
  return std::get<double>(fuse_average(WindowPredictions(std::move(outs))));
}

std::string format_predictions(std::span<const ScalarPrediction> predictions) {
  std::string out = "sample_id,kcal_per_hour\n";
  for (const auto& p : predictions) {
    io::check_identifier(p.sample_id, "sample_id");
    out += p.sample_id + "," + io::format_double(p.kcal_per_hour) + "\n";
  }
  return out;
}

std::vector<ScalarPrediction> load_predictions(const std::filesystem::path& path) {
  const auto lines = io::read_lines(path);
  std::vector<ScalarPrediction> out;
  bool header_seen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = io::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto where = path.string() + ":" + std::to_string(i + 1) + ": ";
    if (!header_seen) {
      if (line != "sample_id,kcal_per_hour") throw Error(ErrorKind::kMalformedRow, where + "unexpected header");
      header_seen = true;
      continue;
    }
    const auto f = io::split_fields(line);
    ScalarPrediction p;
    if (f.size() != 2 || f[0].empty() || !io::parse_double(f[1], p.kcal_per_hour)) {
      throw Error(ErrorKind::kMalformedRow, where + "expected sample_id,kcal_per_hour");
    }
    p.sample_id = f[0];
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace kcalpose
