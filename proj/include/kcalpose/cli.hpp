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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kcalpose/annotate.hpp"
#include "kcalpose/evalkit.hpp"
#include "kcalpose/heartrate.hpp"
#include "kcalpose/kinetics.hpp"
#include "kcalpose/softlabel.hpp"

namespace kcalpose::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInternalError = 3;

// Settings shared by all subcommands; each command reads the subset it needs.
struct RunConfig {
  std::optional<std::filesystem::path> skeletons;
  std::optional<std::filesystem::path> compendium;
  std::optional<std::filesystem::path> body_model;
  std::optional<std::filesystem::path> hr_study;
  std::optional<std::filesystem::path> annotations;
  std::optional<std::filesystem::path> manifest;
  std::optional<std::filesystem::path> predictions;
  std::optional<std::filesystem::path> pred_dists;
  std::filesystem::path out;

  AnnotationConfig annotation;
  SoftLabelCodec codec;
  ConversionConfig conversion;
  WeightUnit hr_weight_unit = WeightUnit::kKilogram;
  std::uint64_t seed = 0;
  std::set<std::string> heldout;
  SplitRatio ratio;
  bool baselines = false;
  bool per_activity = false;

  // Throws InvalidParameter / Io on unusable settings.
  void validate() const;
};

struct SynthCorpusParams {
  std::size_t activities = 12;
  std::size_t samples_per_activity = 20;
  std::size_t frames = 64;
  std::size_t joints = 25;
  double fps = 30.0;
  double freq_hz = 1.0;
  double amp_min = 0.05;
  double amp_max = 0.25;
  double jitter = 0.15;  // per-sample amplitude factor drawn from [1 - jitter, 1 + jitter]
  std::uint64_t seed = 0;
};

// Activity i uses amplitude amp_min + (amp_max - amp_min) * i / (activities - 1)
// scaled by the per-sample jitter; records are emitted activity by activity.
std::string synth_corpus(const SynthCorpusParams& params);

// Entry point shared by the executable and the tests. `args` excludes the
// program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kcalpose::cli
