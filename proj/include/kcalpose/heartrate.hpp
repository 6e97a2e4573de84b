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

// Keytel et al. heart-rate regression for energy expenditure.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace kcalpose {

enum class Sex { kMale, kFemale };

Sex parse_sex(std::string_view text);

enum class WeightUnit { kKilogram, kPound };

WeightUnit parse_weight_unit(std::string_view text);

inline constexpr double kKilogramsPerPound = 0.45359237;

constexpr double pounds_to_kg(double pounds) noexcept { return pounds * kKilogramsPerPound; }

struct SubjectProfile {
  Sex sex = Sex::kMale;
  double weight = 0.0;  // kg unless converted from lb upstream
  double age_years = 0.0;
};

struct HeartRateRecord {
  double hr_bpm = 0.0;
  double duration_h = 1.0;
};

struct KeytelCoefficients {
  // kJ/min = intercept + hr*HR + weight*W + age*A
  struct Set {
    double intercept;
    double hr;
    double weight;
    double age;
  };
  Set male{-55.0969, 0.6309, 0.1988, 0.2017};
  Set female{-20.4022, 0.4472, -0.1263, 0.074};
  double kj_to_kcal_divisor = 4.184;
};

struct KeytelResult {
  double kcal = 0.0;
  // Set when the regression yields a negative value (HR too low for the
  // model); the value is returned unclamped.
  bool implausible = false;
};

// 60 * T * (linear predictor) / 4.184. With T = 1 h the result is kcal/hour.
KeytelResult keytel_kcal(const SubjectProfile& profile, const HeartRateRecord& record,
                         const KeytelCoefficients& coeffs = {});

struct HeartRateStudyRow {
  std::string subject_id;
  SubjectProfile profile;
  std::string activity;
  HeartRateRecord record;
};

// `subject_id,sex,weight,age,activity,hr_bpm,duration_h`; weights are
// converted to kg according to `unit`.
std::vector<HeartRateStudyRow> load_heart_rate_study(const std::filesystem::path& path,
                                                     WeightUnit unit = WeightUnit::kKilogram);

// Mean hourly rate (T = 1 h) per activity across all subjects' rows.
std::map<std::string, double> hourly_kcal_by_activity(const std::vector<HeartRateStudyRow>& rows,
                                                      const KeytelCoefficients& coeffs = {});

}  // namespace kcalpose
