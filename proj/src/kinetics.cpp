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

#include "kcalpose/kinetics.hpp"

#include <array>
#include <cmath>

#include "kcalpose/error.hpp"
#include "kcalpose/io.hpp"
#include "kcalpose/simd/kernels.hpp"

namespace kcalpose {

std::string_view to_string(ConversionMode mode) noexcept {
  return mode == ConversionMode::kDimensional ? "dimensional" : "paper-literal";
}

ConversionMode parse_conversion_mode(std::string_view text) {
  if (text == "dimensional") return ConversionMode::kDimensional;
  if (text == "paper-literal" || text == "paper_literal") return ConversionMode::kPaperLiteral;
  throw Error(ErrorKind::kInvalidParameter, "unknown conversion mode '" + std::string(text) + "'");
}

void ConversionConfig::validate() const {
  if (!(cal_per_joule > 0.0) || !std::isfinite(cal_per_joule)) {
    throw Error(ErrorKind::kInvalidParameter, "cal_per_joule must be positive");
  }
}

double symmetric_sum(std::span<const double> terms) noexcept {
  const std::size_t n = terms.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n / 2; ++i) total += terms[i] + terms[n - 1 - i];
  if (n % 2 == 1) total += terms[n / 2];
  return total;
}

std::vector<double> transition_energies(const RegionTrajectory& traj, const BodyModel& model) {
  if (traj.frame_count() < 2) throw Error(ErrorKind::kInvalidParameter, "trajectory needs at least 2 frames");
  const double fps_sq = traj.fps() * traj.fps();
  std::array<double, RegionTrajectory::kRowWidth> lane_weights{};
  for (std::size_t r = 0; r < kRegionCount; ++r) {
    const double w = model.weights()[r] * fps_sq * 0.5 * model.masses()[r];
    lane_weights[r * 3 + 0] = w;
    lane_weights[r * 3 + 1] = w;
    lane_weights[r * 3 + 2] = w;
  }
  std::vector<double> terms(traj.frame_count() - 1);
  simd::transition_energies(traj.rows(), RegionTrajectory::kRowWidth, lane_weights, terms);
  return terms;
}

double body_energy(const RegionTrajectory& traj, const BodyModel& model) {
  return symmetric_sum(transition_energies(traj, model));
}

double hourly_kcal(double raw_energy_j, std::size_t frame_count, double fps, const ConversionConfig& config) {
  config.validate();
  if (frame_count < 2) throw Error(ErrorKind::kInvalidParameter, "frame count must be >= 2");
  if (!(fps > 0.0) || !std::isfinite(fps)) throw Error(ErrorKind::kInvalidParameter, "fps must be > 0");
  if (!(raw_energy_j >= 0.0)) throw Error(ErrorKind::kInvalidParameter, "raw energy must be >= 0");
  constexpr double kSecondsPerHour = 3600.0;
  const double frames = static_cast<double>(frame_count);
  switch (config.mode) {
    case ConversionMode::kDimensional:
      return raw_energy_j * (fps / (frames - 1.0)) * kSecondsPerHour * config.cal_per_joule / 1000.0;
    case ConversionMode::kPaperLiteral:
      return raw_energy_j * config.cal_per_joule * frames * fps * kSecondsPerHour / 1000.0;
  }
  return 0.0;
}

EnergyEstimate sequence_hourly_kcal(const SkeletonSequence& seq, const BodyModel& model,
                                    const ConversionConfig& config) {
  const auto traj = region_centroids(seq, model);
  EnergyEstimate est;
  est.sample_id = seq.sample_id();
  est.activity = seq.activity();
  est.raw_energy_j = body_energy(traj, model);
  est.duration_s = static_cast<double>(seq.frame_count() - 1) / seq.fps();
  est.hourly_kcal = hourly_kcal(est.raw_energy_j, seq.frame_count(), seq.fps(), config);
  est.mode = config.mode;
  return est;
}

std::string format_energy_report(std::span<const EnergyEstimate> estimates) {
  std::string out = "sample_id,activity,raw_energy_j,duration_s,hourly_kcal,mode\n";
  for (const auto& e : estimates) {
    io::check_identifier(e.sample_id, "sample_id");
    io::check_identifier(e.activity, "activity");
    out += e.sample_id + "," + e.activity + "," + io::format_double(e.raw_energy_j) + "," +
           io::format_double(e.duration_s) + "," + io::format_double(e.hourly_kcal) + "," +
           std::string(to_string(e.mode)) + "\n";
  }
  return out;
}

}  // namespace kcalpose
