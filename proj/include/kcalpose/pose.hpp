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

// Skeleton sequences, the 8-region body model and region centroid
// trajectories.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <string>
#include <vector>

namespace kcalpose {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline constexpr std::size_t kRegionCount = 8;

// Per-frame 3D joint positions (meters) sampled at a fixed rate.
//
// Invariants, checked on construction: fps > 0, at least two frames, every
// frame has the same joint count J >= 1, every coordinate finite.
class SkeletonSequence {
 public:
  SkeletonSequence(std::string sample_id, std::string activity, double fps,
                   std::vector<std::vector<Vec3>> frames);

  // Flat row-major storage (frame-major, J joints per frame).
  SkeletonSequence(std::string sample_id, std::string activity, double fps,
                   std::size_t joint_count, std::vector<Vec3> joints);

  const std::string& sample_id() const noexcept { return sample_id_; }
  const std::string& activity() const noexcept { return activity_; }
  double fps() const noexcept { return fps_; }
  std::size_t frame_count() const noexcept { return joints_.size() / joint_count_; }
  std::size_t joint_count() const noexcept { return joint_count_; }

  std::span<const Vec3> frame(std::size_t t) const noexcept {
    return {joints_.data() + t * joint_count_, joint_count_};
  }
  const Vec3& joint(std::size_t t, std::size_t j) const noexcept {
    return joints_[t * joint_count_ + j];
  }
  std::span<const Vec3> joints() const noexcept { return joints_; }

  // Frames [begin, end) as a new sequence; end - begin must be >= 2.
  SkeletonSequence slice(std::size_t begin, std::size_t end) const;

 private:
  void validate() const;

  std::string sample_id_;
  std::string activity_;
  double fps_;
  std::size_t joint_count_;
  std::vector<Vec3> joints_;
};

// Joint-to-region assignment plus per-region mass (kg) and weighting factor.
class BodyModel {
 public:
  BodyModel(std::vector<std::size_t> region_of, std::array<double, kRegionCount> masses_kg,
            std::array<double, kRegionCount> weights);

  std::size_t joint_count() const noexcept { return region_of_.size(); }
  std::size_t region_of(std::size_t joint) const noexcept { return region_of_[joint]; }
  std::span<const std::size_t> region_map() const noexcept { return region_of_; }
  const std::array<double, kRegionCount>& masses() const noexcept { return masses_; }
  const std::array<double, kRegionCount>& weights() const noexcept { return weights_; }

  BodyModel with_weights(const std::array<double, kRegionCount>& weights) const;
  BodyModel with_masses(const std::array<double, kRegionCount>& masses_kg) const;

 private:
  void validate() const;

  std::vector<std::size_t> region_of_;
  std::array<double, kRegionCount> masses_;
  std::array<double, kRegionCount> weights_;
};

// Region order used by the shipped models.
enum class Region : std::size_t { kHead, kTorso, kLeftArm, kRightArm, kLeftLeg, kRightLeg, kHands, kFeet };

// Dempster segment fractions of a 68 kg body, all weights 1.
std::array<double, kRegionCount> default_region_masses();

// 25-joint Kinect v2 / NTU RGB+D layout.
BodyModel ntu25_body_model();

// 17-keypoint COCO layout.
BodyModel coco17_body_model();

// Picks the shipped model matching the joint count (25 or 17).
BodyModel default_body_model_for(std::size_t joint_count);

// Two-section text file:
//   joint_index,region_index
//   <rows>
//   region_index,mass_kg,weight
//   <8 rows>
BodyModel load_body_model(const std::filesystem::path& path);
std::string format_body_model(const BodyModel& model);

// Per-frame region centroids, stored as F rows of 8 x (x, y, z) doubles so
// consecutive frames can be differenced lane by lane.
class RegionTrajectory {
 public:
  static constexpr std::size_t kRowWidth = kRegionCount * 3;

  RegionTrajectory(std::string sample_id, double fps, std::vector<double> rows);

  const std::string& sample_id() const noexcept { return sample_id_; }
  double fps() const noexcept { return fps_; }
  std::size_t frame_count() const noexcept { return rows_.size() / kRowWidth; }
  std::span<const double> rows() const noexcept { return rows_; }
  Vec3 centroid(std::size_t t, std::size_t region) const noexcept {
    const double* p = rows_.data() + t * kRowWidth + region * 3;
    return {p[0], p[1], p[2]};
  }

 private:
  std::string sample_id_;
  double fps_;
  std::vector<double> rows_;
};

// Mean position of each region's member joints per frame. Regions with no
// member joint in the sequence stay at the origin and therefore contribute no
// motion. Throws UnmappedJoint if the sequence has joints the model lacks.
RegionTrajectory region_centroids(const SkeletonSequence& seq, const BodyModel& model);

// JSON-lines skeleton records: {"sample_id","activity","fps","joints":[[[x,y,z],...],...]}.
// Bare NaN/Infinity tokens and nulls in coordinates are reported as
// NonFiniteCoordinate.
std::vector<SkeletonSequence> parse_skeleton_text(std::string_view text);
std::vector<SkeletonSequence> parse_skeleton_file(const std::filesystem::path& path);
std::string format_skeleton_record(const SkeletonSequence& seq);

struct SynthParams {
  double amplitude_m = 0.1;
  double freq_hz = 1.0;
  double fps = 30.0;
  std::size_t frames = 64;
  std::size_t joints = 25;
  std::uint64_t seed = 0;
  std::string sample_id = "synth";
  std::string activity = "synth";
};

// Joint j at frame t sits at base_j + amplitude * sin(2*pi*freq*t/fps) * u_j,
// with base_j and the unit direction u_j drawn from the seed.
SkeletonSequence synth_sequence(const SynthParams& params);

}  // namespace kcalpose
