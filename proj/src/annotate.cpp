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

#include "kcalpose/annotate.hpp"

#include <algorithm>
#include <cmath>

#include "kcalpose/error.hpp"
#include "kcalpose/io.hpp"

namespace kcalpose {

std::optional<double> CompendiumTable::lookup(std::string_view activity) const {
  const auto it = entries.find(std::string(activity));
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

CompendiumTable parse_compendium(std::string_view text, std::string_view origin) {
  CompendiumTable table;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const auto line = io::trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
    if (!header_seen && line == "activity,kcal_per_hour") {
      header_seen = true;
      continue;
    }
    header_seen = true;
    const auto fields = io::split_fields(line);
    double value = 0.0;
    if (fields.size() != 2 || fields[0].empty() || !io::parse_double(fields[1], value)) {
      throw Error(ErrorKind::kMalformedRow, where + "expected activity,kcal_per_hour");
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw Error(ErrorKind::kNonPositiveValue, where + fields[0] + " has value " + fields[1]);
    }
    if (!table.entries.emplace(fields[0], value).second) {
      throw Error(ErrorKind::kDuplicateActivity, where + fields[0]);
    }
  }
  return table;
}

CompendiumTable load_compendium(const std::filesystem::path& path) {
  const auto lines = io::read_lines(path);
  std::string text;
  for (const auto& l : lines) {
    text += l;
    text += '\n';
  }
  return parse_compendium(text, path.string());
}

std::string format_source_mask(std::uint8_t mask) {
  std::string out;
  auto add = [&](std::uint8_t bit, const char* name) {
    if ((mask & bit) == 0) return;
    if (!out.empty()) out += '|';
    out += name;
  };
  add(kSourceCompendium, "compendium");
  add(kSourceHeartRate, "heart_rate");
  add(kSourceSkeleton, "skeleton");
  return out.empty() ? "none" : out;
}

std::uint8_t parse_source_mask(std::string_view text) {
  std::uint8_t mask = kSourceNone;
  if (text == "none") return mask;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('|', start);
    if (end == std::string_view::npos) end = text.size();
    const auto name = text.substr(start, end - start);
    if (name == "compendium") {
      mask |= kSourceCompendium;
    } else if (name == "heart_rate") {
      mask |= kSourceHeartRate;
    } else if (name == "skeleton") {
      mask |= kSourceSkeleton;
    } else {
      throw Error(ErrorKind::kMalformedRow, "unknown source '" + std::string(name) + "'");
    }
    start = end + 1;
  }
  return mask;
}

CategoryAnnotation category_annotation(std::string activity, const SourceEstimates& available) {
  CategoryAnnotation out;
  out.activity = std::move(activity);
  double total = 0.0;
  int count = 0;
  auto take = [&](const std::optional<double>& v, std::uint8_t bit) {
    if (!v) return;
    if (!std::isfinite(*v)) throw Error(ErrorKind::kInvalidParameter, out.activity + ": non-finite estimate");
    total += *v;
    ++count;
    out.sources |= bit;
  };
  take(available.compendium, kSourceCompendium);
  take(available.heart_rate, kSourceHeartRate);
  take(available.skeleton_mean, kSourceSkeleton);
  if (count == 0) throw Error(ErrorKind::kNoSourceAvailable, out.activity);
  out.kcal_per_hour = total / count;
  if (!(out.kcal_per_hour > 0.0)) {
    throw Error(ErrorKind::kNonPositiveValue,
                out.activity + ": category label " + io::format_double(out.kcal_per_hour) + " is not positive");
  }
  return out;
}

void AnnotationConfig::validate() const {
  if (!(f_max > 0.0) || !(f_max <= l_max) || !std::isfinite(l_max)) {
    throw Error(ErrorKind::kInvalidParameter, "annotation config needs 0 < f_max <= l_max");
  }
}

std::vector<SampleAnnotation> sample_annotations(const CategoryAnnotation& category,
                                                 std::span<const SampleEnergy> energies,
                                                 const AnnotationConfig& config) {
  config.validate();
  if (energies.empty()) throw Error(ErrorKind::kEmptyBatch, category.activity);
  const double l_cat = category.kcal_per_hour;
  if (l_cat > config.l_max) {
    throw Error(ErrorKind::kCategoryExceedsLimit, category.activity + ": " + io::format_double(l_cat) + " > " +
                                                      io::format_double(config.l_max));
  }
  const double f_cat = (l_cat / config.l_max) * config.f_max;
  const auto [lo, hi] = std::minmax_element(energies.begin(), energies.end(),
                                            [](const auto& a, const auto& b) { return a.energy < b.energy; });
  const double e_min = lo->energy;
  const double e_max = hi->energy;
  const double range = e_max - e_min;

  std::vector<SampleAnnotation> out;
  out.reserve(energies.size());
  for (const auto& e : energies) {
    if (!std::isfinite(e.energy)) throw Error(ErrorKind::kInvalidParameter, e.sample_id + ": non-finite energy");
    SampleAnnotation a;
    a.sample_id = e.sample_id;
    a.activity = category.activity;
    a.energy = e.energy;
    a.sources = category.sources;
    a.fluctuation = range > 0.0 ? ((e.energy - e_min) / range) * f_cat - 0.5 * f_cat : 0.0;
    a.kcal_per_hour = l_cat + a.fluctuation;
    out.push_back(std::move(a));
  }
  return out;
}

std::string format_annotations(std::span<const SampleAnnotation> annotations) {
  std::string out = "sample_id,activity,kcal_per_hour,fluctuation,source_mask\n";
  for (const auto& a : annotations) {
    io::check_identifier(a.sample_id, "sample_id");
    io::check_identifier(a.activity, "activity");
    out += a.sample_id + "," + a.activity + "," + io::format_fixed(a.kcal_per_hour, 1) + "," +
           io::format_fixed(a.fluctuation, 1) + "," + format_source_mask(a.sources) + "\n";
  }
  return out;
}

std::vector<SampleAnnotation> load_annotations(const std::filesystem::path& path) {
  const auto lines = io::read_lines(path);
  std::vector<SampleAnnotation> out;
  bool header_seen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = io::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto where = path.string() + ":" + std::to_string(i + 1) + ": ";
    if (!header_seen) {
      if (line != "sample_id,activity,kcal_per_hour,fluctuation,source_mask") {
        throw Error(ErrorKind::kMalformedRow, where + "unexpected header");
      }
      header_seen = true;
      continue;
    }
    const auto f = io::split_fields(line);
    SampleAnnotation a;
    if (f.size() != 5 || f[0].empty() || f[1].empty() || !io::parse_double(f[2], a.kcal_per_hour) ||
        !io::parse_double(f[3], a.fluctuation)) {
      throw Error(ErrorKind::kMalformedRow, where + "expected sample_id,activity,kcal_per_hour,fluctuation,source_mask");
    }
    a.sample_id = f[0];
    a.activity = f[1];
    try {
      a.sources = parse_source_mask(f[4]);
    } catch (const Error& e) {
      throw Error(ErrorKind::kMalformedRow, where + e.what());
    }
    out.push_back(std::move(a));
  }
  if (out.empty()) throw Error(ErrorKind::kEmptyFile, path.string() + " has no annotation rows");
  return out;
}

}  // namespace kcalpose
