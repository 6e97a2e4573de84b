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

#include "kcalpose/heartrate.hpp"

#include <cmath>

#include "kcalpose/error.hpp"
#include "kcalpose/io.hpp"

namespace kcalpose {

Sex parse_sex(std::string_view text) {
  if (text == "male" || text == "m" || text == "M") return Sex::kMale;
  if (text == "female" || text == "f" || text == "F") return Sex::kFemale;
  throw Error(ErrorKind::kInvalidParameter, "unknown sex '" + std::string(text) + "'");
}

WeightUnit parse_weight_unit(std::string_view text) {
  if (text == "kg") return WeightUnit::kKilogram;
  if (text == "lb") return WeightUnit::kPound;
  throw Error(ErrorKind::kInvalidParameter, "unknown weight unit '" + std::string(text) + "'");
}

KeytelResult keytel_kcal(const SubjectProfile& profile, const HeartRateRecord& record,
                         const KeytelCoefficients& coeffs) {
  if (!(profile.weight > 0.0)) throw Error(ErrorKind::kInvalidParameter, "weight must be > 0");
  if (!(profile.age_years > 0.0)) throw Error(ErrorKind::kInvalidParameter, "age must be > 0");
  if (!(record.hr_bpm > 0.0)) throw Error(ErrorKind::kInvalidParameter, "heart rate must be > 0");
  if (!(record.duration_h >= 0.0)) throw Error(ErrorKind::kInvalidParameter, "duration must be >= 0");
  if (!(coeffs.kj_to_kcal_divisor > 0.0)) throw Error(ErrorKind::kInvalidParameter, "divisor must be > 0");

  const auto& c = profile.sex == Sex::kMale ? coeffs.male : coeffs.female;
  const double kj_per_min =
      c.intercept + c.hr * record.hr_bpm + c.weight * profile.weight + c.age * profile.age_years;
  KeytelResult result;
  result.kcal = 60.0 * record.duration_h * kj_per_min / coeffs.kj_to_kcal_divisor;
  result.implausible = kj_per_min < 0.0;
  return result;
}

std::vector<HeartRateStudyRow> load_heart_rate_study(const std::filesystem::path& path, WeightUnit unit) {
  const auto lines = io::read_lines(path);
  std::vector<HeartRateStudyRow> rows;
  bool header_seen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = io::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::kMalformedRow, path.string() + ":" + std::to_string(i + 1) + ": " + why);
    };
    if (!header_seen) {
      if (line != "subject_id,sex,weight,age,activity,hr_bpm,duration_h") {
        fail("expected header subject_id,sex,weight,age,activity,hr_bpm,duration_h");
      }
      header_seen = true;
      continue;
    }
    const auto f = io::split_fields(line);
    if (f.size() != 7) fail("expected 7 fields");
    HeartRateStudyRow row;
    row.subject_id = f[0];
    try {
      row.profile.sex = parse_sex(f[1]);
    } catch (const Error& e) {
      fail(e.what());
    }
    double weight = 0.0;
    if (!io::parse_double(f[2], weight) || !io::parse_double(f[3], row.profile.age_years) ||
        !io::parse_double(f[5], row.record.hr_bpm) || !io::parse_double(f[6], row.record.duration_h)) {
      fail("non-numeric field");
    }
    row.profile.weight = unit == WeightUnit::kPound ? pounds_to_kg(weight) : weight;
    row.activity = f[4];
    if (row.activity.empty()) fail("empty activity");
    if (!(row.profile.weight > 0.0) || !(row.profile.age_years > 0.0) || !(row.record.hr_bpm > 0.0) ||
        !(row.record.duration_h >= 0.0)) {
      fail("weight, age and hr must be > 0 and duration >= 0");
    }
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw Error(ErrorKind::kEmptyFile, path.string() + " has no header");
  return rows;
}

std::map<std::string, double> hourly_kcal_by_activity(const std::vector<HeartRateStudyRow>& rows,
                                                      const KeytelCoefficients& coeffs) {
  std::map<std::string, std::pair<double, std::size_t>> acc;
  for (const auto& row : rows) {
    const auto r = keytel_kcal(row.profile, {row.record.hr_bpm, 1.0}, coeffs);
    auto& [sum, n] = acc[row.activity];
    sum += r.kcal;
    ++n;
  }
  std::map<std::string, double> out;
  for (const auto& [activity, sn] : acc) out[activity] = sn.first / static_cast<double>(sn.second);
  return out;
}

}  // namespace kcalpose
