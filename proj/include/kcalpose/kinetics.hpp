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

// Body-movement energy from region centroid motion and its conversion to an
// hourly caloric rate.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kcalpose/pose.hpp"

namespace kcalpose {

inline constexpr double kCaloriesPerJoule = 0.239;

enum class ConversionMode {
  // Mean power over the clip scaled to one hour: E * fps/(F-1) * 3600 * 0.239 / 1000.
  kDimensional,
  // Literal factor 0.239 * F * fps * 3600, reported in kcal (/1000). Grows
  // with clip length, so it is not dimensionally an hourly rate.
  kPaperLiteral,
};

std::string_view to_string(ConversionMode mode) noexcept;
// Accepts "dimensional", "paper-literal" and "paper_literal".
ConversionMode parse_conversion_mode(std::string_view text);

struct ConversionConfig {
  ConversionMode mode = ConversionMode::kDimensional;
  double cal_per_joule = kCaloriesPerJoule;

  void validate() const;
};

struct EnergyEstimate {
  std::string sample_id;
  std::string activity;
  double raw_energy_j = 0.0;
  double duration_s = 0.0;
  double hourly_kcal = 0.0;
  ConversionMode mode = ConversionMode::kDimensional;
};

// Sum over the F-1 frame transitions and the 8 regions of
//   w_r * fps^2 * (1/2 M_r dx^2 + 1/2 M_r dy^2 + 1/2 M_r dz^2),
// i.e. the weighted kinetic energy of each region centroid at the
// finite-difference velocity. Transition terms are combined pairwise from
// both ends, so reversing the frame order reproduces the result bit for bit.
double body_energy(const RegionTrajectory& traj, const BodyModel& model);

// Per-transition terms of body_energy, in frame order.
std::vector<double> transition_energies(const RegionTrajectory& traj, const BodyModel& model);

double hourly_kcal(double raw_energy_j, std::size_t frame_count, double fps, const ConversionConfig& config);

EnergyEstimate sequence_hourly_kcal(const SkeletonSequence& seq, const BodyModel& model,
                                    const ConversionConfig& config);

// Sums terms[i] + terms[n-1-i] for i < n/2 (plus the middle term), in that
// order. Reversal-invariant because IEEE addition is commutative.
double symmetric_sum(std::span<const double> terms) noexcept;

// `sample_id,activity,raw_energy_j,duration_s,hourly_kcal,mode`
std::string format_energy_report(std::span<const EnergyEstimate> estimates);

}  // namespace kcalpose
