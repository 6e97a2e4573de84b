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

// Metrics, reference baselines and known/new activity splits.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kcalpose/rng.hpp"
#include "kcalpose/softlabel.hpp"

namespace kcalpose {

double mae(std::span<const double> preds, std::span<const double> gts);

// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

// Spearman correlation (Pearson over average ranks) times 100. nullopt when
// either side is constant. Throws DegenerateInput for fewer than 2 pairs.
std::optional<double> spearman_pct(std::span<const double> preds, std::span<const double> gts);

// Mean negative log-probability of the ground-truth bin, floored at 1e-12.
double nll(std::span<const CalorieDistribution> dists, std::span<const double> gts, const SoftLabelCodec& codec);

// Predicts the training mean for every input.
class AveragePredictor {
 public:
  explicit AveragePredictor(std::span<const double> train_gts);
  double predict() const noexcept { return mean_; }

 private:
  double mean_;
};

// Uniform draws on [lo, hi) from a seeded engine; the stream depends only on
// the seed (see rng.hpp).
class RandomPredictor {
 public:
  RandomPredictor(std::uint64_t seed, double lo, double hi);
  double predict() { return rng::uniform(engine_, lo_, hi_); }

 private:
  rng::Engine engine_;
  double lo_;
  double hi_;
};

enum class Split { kTrain, kTestKnown, kTestNew };

std::string_view to_string(Split split) noexcept;
Split parse_split(std::string_view text);

struct SampleRef {
  std::string sample_id;
  std::string activity;
};

struct SplitRatio {
  std::size_t train = 7;
  std::size_t test = 3;
};

SplitRatio parse_ratio(std::string_view text);

struct SplitManifest {
  struct Entry {
    std::string sample_id;
    Split split;
  };

  std::vector<Entry> entries;  // input order
  std::set<std::string> train;
  std::set<std::string> test_known;
  std::set<std::string> test_new;
  std::set<std::string> heldout_activities;
  std::uint64_t seed = 0;
  SplitRatio ratio;
};

// Held-out activities go entirely to test_new. Every other activity is
// shuffled on its own (activities visited in lexicographic order, one engine
// seeded with `seed`) and its first round(n * train / (train + test))
// samples, rounding halves down, become training samples.
SplitManifest build_splits(std::span<const SampleRef> samples, const std::set<std::string>& heldout,
                           std::uint64_t seed, SplitRatio ratio = {});

std::string format_manifest(const SplitManifest& manifest);
SplitManifest load_manifest(const std::filesystem::path& path);

struct EvalReport {
  std::string split_name;
  std::size_t n_samples = 0;
  double mae = 0.0;
  std::optional<double> spc;
  std::optional<double> nll;
};

EvalReport evaluate(std::string split_name, std::span<const double> preds, std::span<const double> gts);

// `split,n,mae,spc,nll`; an undefined SPC prints as "undefined", a missing NLL
// as "NA".
std::string format_report(std::span<const EvalReport> rows);

}  // namespace kcalpose
