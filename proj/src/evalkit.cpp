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

#include "kcalpose/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "kcalpose/error.hpp"
#include "kcalpose/io.hpp"
#include "kcalpose/simd/kernels.hpp"

namespace kcalpose {

namespace {

void check_pairs(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kLengthMismatch, std::to_string(a.size()) + " predictions vs " +
                                                std::to_string(b.size()) + " ground truths");
  }
  if (a.empty()) throw Error(ErrorKind::kEmptyInput, "no samples");
}

}  // namespace

double mae(std::span<const double> preds, std::span<const double> gts) {
  check_pairs(preds, gts);
  return simd::abs_diff_sum(preds, gts) / static_cast<double>(preds.size());
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 hold ranks i+1..j.
    const double mean_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mean_rank;
    i = j;
  }
  return ranks;
}

std::optional<double> spearman_pct(std::span<const double> preds, std::span<const double> gts) {
  if (preds.size() != gts.size()) throw Error(ErrorKind::kLengthMismatch, "spearman inputs differ in length");
  if (preds.size() < 2) throw Error(ErrorKind::kDegenerateInput, "spearman needs at least 2 pairs");
  const auto rp = average_ranks(preds);
  const auto rg = average_ranks(gts);
  const double n = static_cast<double>(rp.size());
  // Both rank vectors have mean (n + 1) / 2.
  const double mean = 0.5 * (n + 1.0);
  double cov = 0.0;
  double var_p = 0.0;
  double var_g = 0.0;
  for (std::size_t i = 0; i < rp.size(); ++i) {
    const double dp = rp[i] - mean;
    const double dg = rg[i] - mean;
    cov += dp * dg;
    var_p += dp * dp;
    var_g += dg * dg;
  }
  if (var_p == 0.0 || var_g == 0.0) return std::nullopt;
  return 100.0 * cov / std::sqrt(var_p * var_g);
}

double nll(std::span<const CalorieDistribution> dists, std::span<const double> gts, const SoftLabelCodec& codec) {
  if (dists.size() != gts.size()) throw Error(ErrorKind::kLengthMismatch, "nll inputs differ in length");
  if (dists.empty()) throw Error(ErrorKind::kEmptyInput, "no samples");
  double total = 0.0;
  for (std::size_t i = 0; i < dists.size(); ++i) {
    if (dists[i].size() != codec.n_bins) throw Error(ErrorKind::kShapeMismatch, "distribution size != codec bins");
    const std::size_t bin = codec.bin_of(gts[i]);
    total -= std::log(std::max(dists[i][bin], kLogFloor));
  }
  return total / static_cast<double>(dists.size());
}

AveragePredictor::AveragePredictor(std::span<const double> train_gts) {
  if (train_gts.empty()) throw Error(ErrorKind::kEmptyInput, "average baseline needs training labels");
  mean_ = simd::sum(train_gts) / static_cast<double>(train_gts.size());
}

RandomPredictor::RandomPredictor(std::uint64_t seed, double lo, double hi) : engine_(seed), lo_(lo), hi_(hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorKind::kInvalidRange, "random baseline needs lo < hi");
  }
}

std::string_view to_string(Split split) noexcept {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kTestKnown: return "test_known";
    case Split::kTestNew: return "test_new";
  }
  return "unknown";
}

Split parse_split(std::string_view text) {
  if (text == "train") return Split::kTrain;
  if (text == "test_known") return Split::kTestKnown;
  if (text == "test_new") return Split::kTestNew;
  throw Error(ErrorKind::kMalformedRow, "unknown split '" + std::string(text) + "'");
}

SplitRatio parse_ratio(std::string_view text) {
  const auto colon = text.find(':');
  SplitRatio r;
  if (colon == std::string_view::npos || !io::parse_size(text.substr(0, colon), r.train) ||
      !io::parse_size(text.substr(colon + 1), r.test) || r.train + r.test == 0) {
    throw Error(ErrorKind::kInvalidParameter, "ratio must look like 7:3");
  }
  return r;
}

SplitManifest build_splits(std::span<const SampleRef> samples, const std::set<std::string>& heldout,
                           std::uint64_t seed, SplitRatio ratio) {
  if (ratio.train + ratio.test == 0) throw Error(ErrorKind::kInvalidParameter, "ratio must be non-zero");
  std::map<std::string, std::vector<std::size_t>> by_activity;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].activity.empty()) {
      throw Error(ErrorKind::kEmptyActivity, "sample " + samples[i].sample_id + " has no activity");
    }
    if (!ids.insert(samples[i].sample_id).second) {
      throw Error(ErrorKind::kInvalidParameter, "duplicate sample id " + samples[i].sample_id);
    }
    by_activity[samples[i].activity].push_back(i);
  }
  for (const auto& name : heldout) {
    if (!by_activity.contains(name)) throw Error(ErrorKind::kUnknownHeldoutActivity, name);
  }

  SplitManifest m;
  m.seed = seed;
  m.ratio = ratio;
  m.heldout_activities = heldout;
  std::vector<Split> assignment(samples.size(), Split::kTrain);
  rng::Engine engine(seed);
  const std::size_t parts = ratio.train + ratio.test;
  for (auto& [activity, members] : by_activity) {
    if (heldout.contains(activity)) {
      for (const auto i : members) assignment[i] = Split::kTestNew;
      continue;
    }
    rng::shuffle(engine, std::span<std::size_t>(members));
    const std::size_t n = members.size();
    const std::size_t n_train = (2 * n * ratio.train + parts - 1) / (2 * parts);
    for (std::size_t k = 0; k < n; ++k) assignment[members[k]] = k < n_train ? Split::kTrain : Split::kTestKnown;
  }
  m.entries.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& id = samples[i].sample_id;
    m.entries.push_back({id, assignment[i]});
    switch (assignment[i]) {
      case Split::kTrain: m.train.insert(id); break;
      case Split::kTestKnown: m.test_known.insert(id); break;
      case Split::kTestNew: m.test_new.insert(id); break;
    }
  }
  return m;
}

std::string format_manifest(const SplitManifest& manifest) {
  std::string heldout;
  for (const auto& a : manifest.heldout_activities) {
    if (!heldout.empty()) heldout += ',';
    heldout += a;
  }
  std::string out = "# seed=" + std::to_string(manifest.seed) + "\n# heldout=" + heldout + "\n# ratio=" +
                    std::to_string(manifest.ratio.train) + ":" + std::to_string(manifest.ratio.test) +
                    "\nsample_id,split\n";
  for (const auto& e : manifest.entries) {
    io::check_identifier(e.sample_id, "sample_id");
    out += e.sample_id + "," + std::string(to_string(e.split)) + "\n";
  }
  return out;
}

SplitManifest load_manifest(const std::filesystem::path& path) {
  const auto lines = io::read_lines(path);
  SplitManifest m;
  bool header_seen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = io::trim(lines[i]);
    if (line.empty()) continue;
    const auto where = path.string() + ":" + std::to_string(i + 1) + ": ";
    if (line.front() == '#') {
      const auto body = io::trim(line.substr(1));
      if (body.starts_with("seed=")) {
        std::size_t seed = 0;
        if (!io::parse_size(body.substr(5), seed)) throw Error(ErrorKind::kMalformedRow, where + "bad seed");
        m.seed = seed;
      } else if (body.starts_with("heldout=")) {
        for (const auto& a : io::split_fields(body.substr(8))) {
          if (!a.empty()) m.heldout_activities.insert(a);
        }
      } else if (body.starts_with("ratio=")) {
        m.ratio = parse_ratio(body.substr(6));
      }
      continue;
    }
    if (!header_seen) {
      if (line != "sample_id,split") throw Error(ErrorKind::kMalformedRow, where + "expected header sample_id,split");
      header_seen = true;
      continue;
    }
    const auto f = io::split_fields(line);
    if (f.size() != 2 || f[0].empty()) throw Error(ErrorKind::kMalformedRow, where + "expected sample_id,split");
    Split split;
    try {
      split = parse_split(f[1]);
    } catch (const Error& e) {
      throw Error(ErrorKind::kMalformedRow, where + e.what());
    }
    m.entries.push_back({f[0], split});
    auto& target = split == Split::kTrain ? m.train : split == Split::kTestKnown ? m.test_known : m.test_new;
    if (!target.insert(f[0]).second) throw Error(ErrorKind::kMalformedRow, where + "duplicate sample " + f[0]);
  }
  if (!header_seen) throw Error(ErrorKind::kEmptyFile, path.string() + " has no manifest header");
  return m;
}

EvalReport evaluate(std::string split_name, std::span<const double> preds, std::span<const double> gts) {
  EvalReport r;
  r.split_name = std::move(split_name);
  r.n_samples = preds.size();
  r.mae = mae(preds, gts);
  if (preds.size() >= 2) r.spc = spearman_pct(preds, gts);
  return r;
}

std::string format_report(std::span<const EvalReport> rows) {
  std::string out = "split,n,mae,spc,nll\n";
  for (const auto& r : rows) {
    io::check_identifier(r.split_name, "split");
    out += r.split_name + "," + std::to_string(r.n_samples) + "," + io::format_fixed(r.mae, 4) + "," +
           (r.spc ? io::format_fixed(*r.spc, 4) : std::string("undefined")) + "," +
           (r.nll ? io::format_fixed(*r.nll, 4) : std::string("NA")) + "\n";
  }
  return out;
}

}  // namespace kcalpose
