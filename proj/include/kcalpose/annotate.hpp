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

// Category- and sample-level caloric annotations.
//
// A category label is the mean of whichever estimates exist for the activity
// (compendium table, heart-rate study, mean skeleton energy). Each sample is
// then shifted inside a band around its category label according to where
// its own movement energy falls between the category's least and most
// energetic samples:
//
//   f_cat = (l_cat / l_max) * f_max
//   f_s   = (E_s - E_min) / (E_max - E_min) * f_cat - f_cat / 2
//   l_s   = l_cat + f_s

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kcalpose {

struct CompendiumTable {
  std::map<std::string, double> entries;  // activity -> kcal/hour
  double reference_weight_lb = 150.0;

  std::optional<double> lookup(std::string_view activity) const;
};

// `activity,kcal_per_hour`
CompendiumTable load_compendium(const std::filesystem::path& path);
CompendiumTable parse_compendium(std::string_view text, std::string_view origin = "<compendium>");

enum SourceMask : std::uint8_t {
  kSourceNone = 0,
  kSourceCompendium = 1u << 0,
  kSourceHeartRate = 1u << 1,
  kSourceSkeleton = 1u << 2,
};

// "compendium|heart_rate|skeleton" style, in that fixed order.
std::string format_source_mask(std::uint8_t mask);
std::uint8_t parse_source_mask(std::string_view text);

struct SourceEstimates {
  std::optional<double> compendium;
  std::optional<double> heart_rate;
  std::optional<double> skeleton_mean;
};

struct CategoryAnnotation {
  std::string activity;
  double kcal_per_hour = 0.0;
  std::uint8_t sources = kSourceNone;
};

CategoryAnnotation category_annotation(std::string activity, const SourceEstimates& available);

struct AnnotationConfig {
  double f_max = 100.0;
  double l_max = 1000.0;

  void validate() const;
};

struct SampleEnergy {
  std::string sample_id;
  double energy = 0.0;
};

struct SampleAnnotation {
  std::string sample_id;
  std::string activity;
  double kcal_per_hour = 0.0;
  double fluctuation = 0.0;
  double energy = 0.0;
  std::uint8_t sources = kSourceNone;
};

// Output order follows `energies`. When all energies are equal every sample
// keeps the category label.
std::vector<SampleAnnotation> sample_annotations(const CategoryAnnotation& category,
                                                 std::span<const SampleEnergy> energies,
                                                 const AnnotationConfig& config);

// `sample_id,activity,kcal_per_hour,fluctuation,source_mask`, values rounded
// to one decimal.
std::string format_annotations(std::span<const SampleAnnotation> annotations);
std::vector<SampleAnnotation> load_annotations(const std::filesystem::path& path);

}  // namespace kcalpose
