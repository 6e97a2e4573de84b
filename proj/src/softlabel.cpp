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

#include "kcalpose/softlabel.hpp"

#include <algorithm>
#include <cmath>

#include "kcalpose/error.hpp"
#include "kcalpose/io.hpp"
#include "kcalpose/simd/kernels.hpp"

namespace kcalpose {

void SoftLabelCodec::validate() const {
  if (n_bins < 2) throw Error(ErrorKind::kInvalidParameter, "soft-label codec needs >= 2 bins");
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw Error(ErrorKind::kInvalidParameter, "resolution must be > 0");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error(ErrorKind::kInvalidParameter, "sigma must be > 0");
}

std::size_t SoftLabelCodec::bin_of(double kcal) const {
  const double upper = static_cast<double>(n_bins) * resolution;
  if (!(kcal >= 0.0) || !(kcal <= upper)) {
    throw Error(ErrorKind::kOutOfRangeLabel,
                io::format_double(kcal) + " outside [0, " + io::format_double(upper) + "]");
  }
  const auto bin = static_cast<std::size_t>(std::llround(kcal / resolution));
  return std::min(bin, n_bins - 1);
}

CalorieDistribution::CalorieDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw Error(ErrorKind::kShapeMismatch, "distribution has no bins");
  for (const double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorKind::kInvalidParameter, "distribution entries must be finite and >= 0");
    }
  }
  const double total = simd::sum(probs_);
  if (std::fabs(total - 1.0) > kNormTolerance) {
    throw Error(ErrorKind::kInvalidParameter, "distribution sums to " + io::format_double(total));
  }
}

CalorieDistribution CalorieDistribution::normalized(std::vector<double> weights) {
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::kInvalidParameter, "weights must be finite and >= 0");
    }
  }
  const double total = simd::sum(weights);
  if (!(total > 0.0)) throw Error(ErrorKind::kInvalidParameter, "weights sum to zero");
  simd::scale(weights, 1.0 / total);
  return CalorieDistribution(std::move(weights));
}

CalorieDistribution CalorieDistribution::delta(std::size_t n_bins, std::size_t bin) {
  if (bin >= n_bins) throw Error(ErrorKind::kOutOfRangeLabel, "delta bin out of range");
  std::vector<double> p(n_bins, 0.0);
  p[bin] = 1.0;
  return CalorieDistribution(std::move(p));
}

CalorieDistribution CalorieDistribution::uniform(std::size_t n_bins) {
  return normalized(std::vector<double>(n_bins, 1.0));
}

CalorieDistribution encode(double kcal, const SoftLabelCodec& codec) {
  codec.validate();
  const std::size_t mode_bin = codec.bin_of(kcal);
  // Offsetting by the nearest bin's distance keeps the peak at exp(0) = 1, so
  // a narrow sigma cannot underflow the whole vector.
  const double nearest = static_cast<double>(mode_bin) * codec.resolution - kcal;
  const double inv_two_var = 1.0 / (2.0 * codec.sigma * codec.sigma);
  std::vector<double> w(codec.n_bins);
  for (std::size_t n = 0; n < codec.n_bins; ++n) {
    const double d = static_cast<double>(n) * codec.resolution - kcal;
    w[n] = std::exp(-(d * d - nearest * nearest) * inv_two_var);
  }
  return CalorieDistribution::normalized(std::move(w));
}

double kl_loss(const CalorieDistribution& pred, const CalorieDistribution& target) {
  if (pred.size() != target.size()) {
    throw Error(ErrorKind::kShapeMismatch, "prediction has " + std::to_string(pred.size()) + " bins, target " +
                                               std::to_string(target.size()));
  }
  double total = 0.0;
  for (std::size_t n = 0; n < target.size(); ++n) {
    const double t = target[n];
    if (t == 0.0) continue;
    const double y = std::max(pred[n], std::min(kLogFloor, t));
    total += t * (std::log(t) - std::log(y));
  }
  return total;
}

double decode(const CalorieDistribution& dist, const SoftLabelCodec& codec, Decoding mode) {
  if (mode == Decoding::kArgmax) {
    const auto probs = dist.probs();
    const auto it = std::max_element(probs.begin(), probs.end());
    return static_cast<double>(it - probs.begin()) * codec.resolution;
  }
  double total = 0.0;
  for (std::size_t n = 0; n < dist.size(); ++n) total += dist[n] * static_cast<double>(n);
  return total * codec.resolution;
}

double entropy(const CalorieDistribution& dist) {
  double h = 0.0;
  for (const double p : dist.probs()) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

std::string format_distribution_dump(std::span<const std::pair<std::string, CalorieDistribution>> dists) {
  std::string out;
  for (const auto& [id, dist] : dists) {
    io::check_identifier(id, "sample_id");
    out += "# sample_id=" + id + "\nbin,prob\n";
    for (std::size_t n = 0; n < dist.size(); ++n) {
      out += std::to_string(n) + "," + io::format_double(dist[n]) + "\n";
    }
  }
  return out;
}

std::vector<std::pair<std::string, CalorieDistribution>> load_distribution_dump(const std::filesystem::path& path) {
  const auto lines = io::read_lines(path);
  std::vector<std::pair<std::string, CalorieDistribution>> out;
  std::string current;
  std::vector<double> probs;
  bool open = false;
  auto close = [&](std::size_t line_no) {
    if (!open) return;
    try {
      out.emplace_back(current, CalorieDistribution(std::move(probs)));
    } catch (const Error& e) {
      throw Error(ErrorKind::kMalformedRow, path.string() + ":" + std::to_string(line_no) + ": " + current + ": " +
                                                e.what());
    }
    probs.clear();
    open = false;
  };
  constexpr std::string_view kPrefix = "# sample_id=";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = io::trim(lines[i]);
    if (line.empty()) continue;
    if (line.starts_with(kPrefix)) {
      close(i + 1);
      current = std::string(io::trim(line.substr(kPrefix.size())));
      open = true;
      continue;
    }
    if (line.front() == '#' || line == "bin,prob") continue;
    const auto where = path.string() + ":" + std::to_string(i + 1) + ": ";
    if (!open) throw Error(ErrorKind::kMalformedRow, where + "bin row before any '# sample_id=' line");
    const auto f = io::split_fields(line);
    std::size_t bin = 0;
    double p = 0.0;
    if (f.size() != 2 || !io::parse_size(f[0], bin) || !io::parse_double(f[1], p)) {
      throw Error(ErrorKind::kMalformedRow, where + "expected bin,prob");
    }
    if (bin >= probs.size()) probs.resize(bin + 1, 0.0);
    probs[bin] = p;
  }
  close(lines.size());
  return out;
}

}  // namespace kcalpose
