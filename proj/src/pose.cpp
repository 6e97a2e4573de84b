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

#include "kcalpose/pose.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "kcalpose/error.hpp"
#include "kcalpose/io.hpp"
#include "kcalpose/rng.hpp"

namespace kcalpose {

namespace {

std::vector<Vec3> flatten(const std::vector<std::vector<Vec3>>& frames, std::size_t& joint_count) {
  if (frames.empty() || frames.front().empty()) {
    throw Error(ErrorKind::kInvalidParameter, "sequence needs at least one joint per frame");
  }
  joint_count = frames.front().size();
  std::vector<Vec3> flat;
  flat.reserve(frames.size() * joint_count);
  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (frames[t].size() != joint_count) {
      throw Error(ErrorKind::kInconsistentJointCount,
                  "frame " + std::to_string(t) + " has " + std::to_string(frames[t].size()) +
                      " joints, expected " + std::to_string(joint_count));
    }
    flat.insert(flat.end(), frames[t].begin(), frames[t].end());
  }
  return flat;
}

bool finite(const Vec3& p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); }

}  // namespace

SkeletonSequence::SkeletonSequence(std::string sample_id, std::string activity, double fps,
                                   std::vector<std::vector<Vec3>> frames)
    : sample_id_(std::move(sample_id)), activity_(std::move(activity)), fps_(fps), joint_count_(0) {
  joints_ = flatten(frames, joint_count_);
  validate();
}

SkeletonSequence::SkeletonSequence(std::string sample_id, std::string activity, double fps,
                                   std::size_t joint_count, std::vector<Vec3> joints)
    : sample_id_(std::move(sample_id)),
      activity_(std::move(activity)),
      fps_(fps),
      joint_count_(joint_count),
      joints_(std::move(joints)) {
  if (joint_count_ == 0) throw Error(ErrorKind::kInvalidParameter, "joint count must be >= 1");
  if (joints_.size() % joint_count_ != 0) {
    throw Error(ErrorKind::kInconsistentJointCount, "joint buffer is not a whole number of frames");
  }
  validate();
}

void SkeletonSequence::validate() const {
  if (!(fps_ > 0.0) || !std::isfinite(fps_)) {
    throw Error(ErrorKind::kInvalidParameter, "fps must be positive and finite");
  }
  if (frame_count() < 2) throw Error(ErrorKind::kInvalidParameter, "sequence needs at least 2 frames");
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    if (!finite(joints_[i])) {
      throw Error(ErrorKind::kNonFiniteCoordinate, "frame " + std::to_string(i / joint_count_) +
                                                       " joint " + std::to_string(i % joint_count_));
    }
  }
}

SkeletonSequence SkeletonSequence::slice(std::size_t begin, std::size_t end) const {
  if (end > frame_count() || begin >= end) throw Error(ErrorKind::kInvalidParameter, "bad frame range");
  std::vector<Vec3> part(joints_.begin() + static_cast<std::ptrdiff_t>(begin * joint_count_),
                         joints_.begin() + static_cast<std::ptrdiff_t>(end * joint_count_));
  return SkeletonSequence(sample_id_, activity_, fps_, joint_count_, std::move(part));
}

// ---------------------------------------------------------------------------
// Body model

BodyModel::BodyModel(std::vector<std::size_t> region_of, std::array<double, kRegionCount> masses_kg,
                     std::array<double, kRegionCount> weights)
    : region_of_(std::move(region_of)), masses_(masses_kg), weights_(weights) {
  validate();
}

void BodyModel::validate() const {
  if (region_of_.empty()) throw Error(ErrorKind::kInvalidParameter, "body model has no joints");
  std::array<std::size_t, kRegionCount> members{};
  for (std::size_t j = 0; j < region_of_.size(); ++j) {
    if (region_of_[j] >= kRegionCount) {
      throw Error(ErrorKind::kInvalidParameter,
                  "joint " + std::to_string(j) + " maps to region " + std::to_string(region_of_[j]));
    }
    ++members[region_of_[j]];
  }
  double total_mass = 0.0;
  for (std::size_t r = 0; r < kRegionCount; ++r) {
    if (members[r] == 0) throw Error(ErrorKind::kInvalidParameter, "region " + std::to_string(r) + " has no joints");
    if (!(masses_[r] > 0.0) || !std::isfinite(masses_[r])) {
      throw Error(ErrorKind::kInvalidParameter, "region " + std::to_string(r) + " mass must be positive");
    }
    if (!(weights_[r] >= 0.0) || !std::isfinite(weights_[r])) {
      throw Error(ErrorKind::kInvalidParameter, "region " + std::to_string(r) + " weight must be >= 0");
    }
    total_mass += masses_[r];
  }
  if (!(total_mass > 0.0)) throw Error(ErrorKind::kInvalidParameter, "total mass must be positive");
}

BodyModel BodyModel::with_weights(const std::array<double, kRegionCount>& weights) const {
  return BodyModel(region_of_, masses_, weights);
}

BodyModel BodyModel::with_masses(const std::array<double, kRegionCount>& masses_kg) const {
  return BodyModel(region_of_, masses_kg, weights_);
}

std::array<double, kRegionCount> default_region_masses() {
  constexpr double kBodyMassKg = 68.0;
  // head+neck, trunk, upper arm+forearm (per side), thigh+shank (per side),
  // both hands, both feet.
  constexpr std::array<double, kRegionCount> kFractions{
      0.081, 0.497, 0.044, 0.044, 0.1465, 0.1465, 0.012, 0.029};
  std::array<double, kRegionCount> masses{};
  for (std::size_t r = 0; r < kRegionCount; ++r) masses[r] = kFractions[r] * kBodyMassKg;
  return masses;
}

namespace {

constexpr std::size_t R(Region r) { return static_cast<std::size_t>(r); }

std::array<double, kRegionCount> unit_weights() {
  std::array<double, kRegionCount> w{};
  w.fill(1.0);
  return w;
}

}  // namespace

BodyModel ntu25_body_model() {
  using enum Region;
  std::vector<std::size_t> map = {
      R(kTorso),    R(kTorso),    R(kHead),     R(kHead),      // 0 spine base, 1 spine mid, 2 neck, 3 head
      R(kLeftArm),  R(kLeftArm),  R(kLeftArm),  R(kHands),     // 4-7 shoulder, elbow, wrist, hand (L)
      R(kRightArm), R(kRightArm), R(kRightArm), R(kHands),     // 8-11 (R)
      R(kLeftLeg),  R(kLeftLeg),  R(kLeftLeg),  R(kFeet),      // 12-15 hip, knee, ankle, foot (L)
      R(kRightLeg), R(kRightLeg), R(kRightLeg), R(kFeet),      // 16-19 (R)
      R(kTorso),                                               // 20 spine shoulder
      R(kHands),    R(kHands),    R(kHands),    R(kHands),     // 21-24 hand tips and thumbs
  };
  return BodyModel(std::move(map), default_region_masses(), unit_weights());
}

BodyModel coco17_body_model() {
  using enum Region;
  std::vector<std::size_t> map = {
      R(kHead),     R(kHead),     R(kHead),  R(kHead), R(kHead),  // nose, eyes, ears
      R(kTorso),    R(kTorso),                                   // shoulders
      R(kLeftArm),  R(kRightArm),                                // elbows
      R(kHands),    R(kHands),                                   // wrists
      R(kTorso),    R(kTorso),                                   // hips
      R(kLeftLeg),  R(kRightLeg),                                // knees
      R(kFeet),     R(kFeet),                                    // ankles
  };
  return BodyModel(std::move(map), default_region_masses(), unit_weights());
}

BodyModel default_body_model_for(std::size_t joint_count) {
  if (joint_count == 25) return ntu25_body_model();
  if (joint_count == 17) return coco17_body_model();
  throw Error(ErrorKind::kInvalidParameter, "no shipped body model for " + std::to_string(joint_count) +
                                                " joints; pass a body model file");
}

BodyModel load_body_model(const std::filesystem::path& path) {
  const auto lines = io::read_lines(path);
  enum class Section { kNone, kJoints, kRegions } section = Section::kNone;
  std::vector<std::pair<std::size_t, std::size_t>> joint_rows;
  std::array<double, kRegionCount> masses{};
  std::array<double, kRegionCount> weights{};
  std::array<bool, kRegionCount> seen{};

  auto fail = [&](std::size_t line_no, const std::string& why) {
    throw Error(ErrorKind::kMalformedRow, path.string() + ":" + std::to_string(line_no) + ": " + why);
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = io::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = io::split_fields(line);
    if (line == "joint_index,region_index") {
      if (section != Section::kNone) fail(i + 1, "joint section must come first");
      section = Section::kJoints;
      continue;
    }
    if (line == "region_index,mass_kg,weight") {
      if (section != Section::kJoints) fail(i + 1, "region section must follow the joint section");
      section = Section::kRegions;
      continue;
    }
    if (section == Section::kJoints) {
      std::size_t joint = 0;
      std::size_t region = 0;
      if (fields.size() != 2 || !io::parse_size(fields[0], joint) || !io::parse_size(fields[1], region)) {
        fail(i + 1, "expected joint_index,region_index");
      }
      if (region >= kRegionCount) fail(i + 1, "region index out of range");
      joint_rows.emplace_back(joint, region);
    } else if (section == Section::kRegions) {
      std::size_t region = 0;
      double mass = 0.0;
      double weight = 0.0;
      if (fields.size() != 3 || !io::parse_size(fields[0], region) || !io::parse_double(fields[1], mass) ||
          !io::parse_double(fields[2], weight)) {
        fail(i + 1, "expected region_index,mass_kg,weight");
      }
      if (region >= kRegionCount) fail(i + 1, "region index out of range");
      if (seen[region]) fail(i + 1, "region listed twice");
      seen[region] = true;
      masses[region] = mass;
      weights[region] = weight;
    } else {
      fail(i + 1, "missing header 'joint_index,region_index'");
    }
  }
  for (std::size_t r = 0; r < kRegionCount; ++r) {
    if (!seen[r]) fail(lines.size(), "region " + std::to_string(r) + " missing from region section");
  }
  std::vector<std::size_t> region_of(joint_rows.size(), kRegionCount);
  for (const auto& [joint, region] : joint_rows) {
    if (joint >= region_of.size()) fail(0, "joint indices must be 0..J-1 without gaps");
    if (region_of[joint] != kRegionCount) fail(0, "joint " + std::to_string(joint) + " listed twice");
    region_of[joint] = region;
  }
  try {
    return BodyModel(std::move(region_of), masses, weights);
  } catch (const Error& e) {
    throw Error(ErrorKind::kMalformedRow, path.string() + ": " + e.what());
  }
}

std::string format_body_model(const BodyModel& model) {
  std::string out = "joint_index,region_index\n";
  for (std::size_t j = 0; j < model.joint_count(); ++j) {
    out += std::to_string(j) + "," + std::to_string(model.region_of(j)) + "\n";
  }
  out += "region_index,mass_kg,weight\n";
  for (std::size_t r = 0; r < kRegionCount; ++r) {
    out += std::to_string(r) + "," + io::format_double(model.masses()[r]) + "," +
           io::format_double(model.weights()[r]) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Region centroids

RegionTrajectory::RegionTrajectory(std::string sample_id, double fps, std::vector<double> rows)
    : sample_id_(std::move(sample_id)), fps_(fps), rows_(std::move(rows)) {
  if (rows_.size() % kRowWidth != 0) throw Error(ErrorKind::kShapeMismatch, "trajectory rows must be 24 wide");
}

RegionTrajectory region_centroids(const SkeletonSequence& seq, const BodyModel& model) {
  const std::size_t joints = seq.joint_count();
  if (joints > model.joint_count()) {
    throw Error(ErrorKind::kUnmappedJoint, "joint " + std::to_string(model.joint_count()) +
                                               " of " + seq.sample_id() + " has no region (model maps " +
                                               std::to_string(model.joint_count()) + " joints)");
  }
  std::array<double, kRegionCount> members{};
  for (std::size_t j = 0; j < joints; ++j) members[model.region_of(j)] += 1.0;

  const std::size_t frames = seq.frame_count();
  std::vector<double> rows(frames * RegionTrajectory::kRowWidth, 0.0);
  for (std::size_t t = 0; t < frames; ++t) {
    double* row = rows.data() + t * RegionTrajectory::kRowWidth;
    const auto frame = seq.frame(t);
    for (std::size_t j = 0; j < joints; ++j) {
      double* c = row + model.region_of(j) * 3;
      c[0] += frame[j].x;
      c[1] += frame[j].y;
      c[2] += frame[j].z;
    }
    for (std::size_t r = 0; r < kRegionCount; ++r) {
      if (members[r] == 0.0) continue;
      for (std::size_t c = 0; c < 3; ++c) row[r * 3 + c] /= members[r];
    }
  }
  return RegionTrajectory(seq.sample_id(), seq.fps(), std::move(rows));
}

// ---------------------------------------------------------------------------
// Skeleton record text

namespace {

// Rewrites bare NaN / Infinity / -Infinity tokens (as emitted by some JSON
// writers) to null so the strict parser accepts the line and the coordinate
// check can name the problem.
std::string normalize_non_finite_tokens(std::string_view line) {
  std::string out;
  out.reserve(line.size());
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string) {
      out.push_back(c);
      if (c == '\\' && i + 1 < line.size()) {
        out.push_back(line[++i]);
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      out.push_back(c);
    } else if (line.substr(i, 3) == "NaN") {
      out += "null";
      i += 2;
    } else if (line.substr(i, 8) == "Infinity") {
      if (!out.empty() && out.back() == '-') out.pop_back();
      out += "null";
      i += 7;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

SkeletonSequence parse_record(std::string_view line, std::size_t line_no) {
  const auto where = "line " + std::to_string(line_no) + ": ";
  auto malformed = [&](const std::string& why) { return Error(ErrorKind::kMalformedRecord, where + why); };

  const auto doc = nlohmann::json::parse(normalize_non_finite_tokens(line), nullptr, false);
  if (doc.is_discarded()) throw malformed("not a valid JSON object");
  if (!doc.is_object()) throw malformed("record must be an object");
  for (const char* key : {"sample_id", "activity", "fps", "joints"}) {
    if (!doc.contains(key)) throw malformed(std::string("missing field '") + key + "'");
  }
  if (!doc["sample_id"].is_string() || !doc["activity"].is_string()) {
    throw malformed("sample_id and activity must be strings");
  }
  if (!doc["fps"].is_number()) throw malformed("fps must be a number");
  const auto& frames_json = doc["joints"];
  if (!frames_json.is_array()) throw malformed("joints must be an array of frames");
  if (frames_json.size() < 2) throw malformed("at least 2 frames required");

  std::size_t joint_count = 0;
  std::vector<Vec3> joints;
  for (std::size_t t = 0; t < frames_json.size(); ++t) {
    const auto& frame = frames_json[t];
    if (!frame.is_array()) throw malformed("frame " + std::to_string(t) + " is not an array");
    if (t == 0) {
      joint_count = frame.size();
      if (joint_count == 0) throw malformed("frame 0 has no joints");
      joints.reserve(frames_json.size() * joint_count);
    } else if (frame.size() != joint_count) {
      throw Error(ErrorKind::kInconsistentJointCount,
                  where + "frame " + std::to_string(t) + " has " + std::to_string(frame.size()) +
                      " joints, expected " + std::to_string(joint_count));
    }
    for (std::size_t j = 0; j < frame.size(); ++j) {
      const auto& p = frame[j];
      if (!p.is_array() || p.size() != 3) {
        throw malformed("frame " + std::to_string(t) + " joint " + std::to_string(j) + " is not [x,y,z]");
      }
      double xyz[3];
      for (std::size_t c = 0; c < 3; ++c) {
        if (p[c].is_null()) {
          throw Error(ErrorKind::kNonFiniteCoordinate,
                      where + "frame " + std::to_string(t) + " joint " + std::to_string(j));
        }
        if (!p[c].is_number()) throw malformed("coordinate is not a number");
        xyz[c] = p[c].get<double>();
      }
      joints.push_back({xyz[0], xyz[1], xyz[2]});
    }
  }
  const double fps = doc["fps"].get<double>();
  if (!(fps > 0.0)) throw malformed("fps must be > 0");
  try {
    return SkeletonSequence(doc["sample_id"].get<std::string>(), doc["activity"].get<std::string>(), fps,
                            joint_count, std::move(joints));
  } catch (const Error& e) {
    const auto kind = e.kind() == ErrorKind::kInvalidParameter ? ErrorKind::kMalformedRecord : e.kind();
    throw Error(kind, where + e.what());
  }
}

}  // namespace

std::vector<SkeletonSequence> parse_skeleton_text(std::string_view text) {
  std::vector<SkeletonSequence> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const auto line = io::trim(text.substr(start, end - start));
    if (!line.empty()) out.push_back(parse_record(line, line_no));
    start = end + 1;
  }
  return out;
}

std::vector<SkeletonSequence> parse_skeleton_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_skeleton_text(buf.str());
}

std::string format_skeleton_record(const SkeletonSequence& seq) {
  nlohmann::ordered_json doc;
  doc["sample_id"] = seq.sample_id();
  doc["activity"] = seq.activity();
  doc["fps"] = seq.fps();
  auto frames = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < seq.frame_count(); ++t) {
    auto frame = nlohmann::ordered_json::array();
    for (const auto& p : seq.frame(t)) frame.push_back({p.x, p.y, p.z});
    frames.push_back(std::move(frame));
  }
  doc["joints"] = std::move(frames);
  return doc.dump();
}

// ---------------------------------------------------------------------------
// Synthetic sequences

SkeletonSequence synth_sequence(const SynthParams& params) {
  if (!(params.fps > 0.0) || !std::isfinite(params.fps)) {
    throw Error(ErrorKind::kInvalidParameter, "fps must be positive");
  }
  if (params.frames < 2) throw Error(ErrorKind::kInvalidParameter, "frames must be >= 2");
  if (params.joints < 1) throw Error(ErrorKind::kInvalidParameter, "joints must be >= 1");
  if (!(params.amplitude_m >= 0.0) || !std::isfinite(params.amplitude_m)) {
    throw Error(ErrorKind::kInvalidParameter, "amplitude must be >= 0");
  }
  if (!std::isfinite(params.freq_hz)) throw Error(ErrorKind::kInvalidParameter, "freq must be finite");

  rng::Engine gen(params.seed);
  std::vector<Vec3> base(params.joints);
  std::vector<Vec3> dir(params.joints);
  for (std::size_t j = 0; j < params.joints; ++j) {
    base[j] = {rng::uniform(gen, -1.0, 1.0), rng::uniform(gen, -1.0, 1.0), rng::uniform(gen, -1.0, 1.0)};
    const double z = rng::uniform(gen, -1.0, 1.0);
    const double phi = rng::uniform(gen, 0.0, 2.0 * std::numbers::pi);
    const double rho = std::sqrt(1.0 - z * z);
    dir[j] = {rho * std::cos(phi), rho * std::sin(phi), z};
  }

  std::vector<Vec3> joints;
  joints.reserve(params.frames * params.joints);
  for (std::size_t t = 0; t < params.frames; ++t) {
    const double phase = 2.0 * std::numbers::pi * params.freq_hz * static_cast<double>(t) / params.fps;
    const double offset = params.amplitude_m * std::sin(phase);
    for (std::size_t j = 0; j < params.joints; ++j) {
      joints.push_back({base[j].x + offset * dir[j].x, base[j].y + offset * dir[j].y,
                        base[j].z + offset * dir[j].z});
    }
  }
  return SkeletonSequence(params.sample_id, params.activity, params.fps, params.joints, std::move(joints));
}

}  // namespace kcalpose
