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

// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are pinned
// below. Criteria listed in kExpectedFailures are reported as FAIL but do not
// change the exit code unless --strict is given.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kcalpose/annotate.hpp"
#include "kcalpose/cli.hpp"
#include "kcalpose/evalkit.hpp"
#include "kcalpose/heartrate.hpp"
#include "kcalpose/io.hpp"
#include "kcalpose/kinetics.hpp"
#include "kcalpose/pose.hpp"
#include "kcalpose/predictor.hpp"
#include "kcalpose/simd/kernels.hpp"
#include "kcalpose/softlabel.hpp"
#include "oracles.hpp"

using namespace kcalpose;

namespace {

// Keytel reference values and their tolerance, as stated for criterion 1.
constexpr double kKeytelMaleExpected = 570.40;
constexpr double kKeytelFemaleExpected = 266.58;
constexpr double kKeytelTol = 0.01;
constexpr double kKeytelMaxMs = 1.0;

constexpr double kKineticsRelTol = 1e-6;
constexpr double kScalingRelTol = 1e-9;
constexpr double kGenericTranslationRelTol = 1e-9;
constexpr double kPropertyMaxMs = 1000.0;

constexpr double kSymmetricMeanTol = 1e-9;

constexpr double kNormTol = 1e-9;
constexpr double kDecodeTol = 0.5;

constexpr double kSpearmanTol = 1e-9;

constexpr double kRandomMaeExpected = 250.0;
constexpr double kRandomMaeTol = 1.0;
constexpr double kAverageMaeTol = 1e-9;

constexpr double kSplitMaxMs = 1000.0;
constexpr double kPipelineMaxMs = 10000.0;

// The male value stated for criterion 1 (570.40) is 0.017 below the value the
// regression yields for those inputs (570.4173), outside the 0.01 tolerance.
const std::set<int> kExpectedFailures = {1};

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt(double v, int prec = 6) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

SkeletonSequence random_ntu(std::mt19937_64& g, std::size_t frames) {
  SynthParams p;
  p.frames = frames;
  p.seed = g();
  p.amplitude_m = std::uniform_real_distribution<double>(0.01, 0.5)(g);
  p.freq_hz = std::uniform_real_distribution<double>(0.2, 3.0)(g);
  return synth_sequence(p);
}

double energy(const SkeletonSequence& s, const BodyModel& m) { return body_energy(region_centroids(s, m), m); }

// ---------------------------------------------------------------------------

Outcome keytel_exactness() {
  const auto t0 = Clock::now();
  const double male = keytel_kcal({Sex::kMale, 68, 28}, {120, 1}).kcal;
  const double female = keytel_kcal({Sex::kFemale, 60, 25}, {100, 1}).kcal;
  const double ms = ms_since(t0);
  const double male_oracle = oracle::keytel_male(120, 68, 28, 1);
  const double female_oracle = oracle::keytel_female(100, 60, 25, 1);

  Outcome o;
  o.pass = std::fabs(male - kKeytelMaleExpected) <= kKeytelTol && std::fabs(female - kKeytelFemaleExpected) <= kKeytelTol &&
           ms < kKeytelMaxMs;
  o.detail = "male=" + fmt(male, 10) + " (expected " + fmt(kKeytelMaleExpected) + ", |d|=" +
             fmt(std::fabs(male - kKeytelMaleExpected), 3) + "), female=" + fmt(female, 10) + " (expected " +
             fmt(kKeytelFemaleExpected) + ", |d|=" + fmt(std::fabs(female - kKeytelFemaleExpected), 3) +
             "), tol " + fmt(kKeytelTol) + "; hand-arithmetic oracle agrees to " +
             fmt(std::max(std::fabs(male - male_oracle), std::fabs(female - female_oracle)), 3) + "; " + fmt(ms, 3) +
             " ms";
  return o;
}

Outcome kinetics_oracle() {
  const auto model = oracle::single_region_model(1.0);
  const auto seq = oracle::constant_velocity(1.0, 30.0, 31);
  const double raw = energy(seq, model);
  const double hourly = hourly_kcal(raw, seq.frame_count(), seq.fps(), {});

  std::vector<Vec3> still;
  for (int t = 0; t < 30; ++t) {
    for (int j = 0; j < 25; ++j) still.push_back({0.01 * j, 1.0 - 0.02 * j, 0.5});
  }
  const double zero = sequence_hourly_kcal(SkeletonSequence("s", "a", 30, 25, still), ntu25_body_model(), {}).hourly_kcal;

  Outcome o;
  o.pass = rel_err(raw, 15.0) <= kKineticsRelTol && rel_err(hourly, 12.906) <= kKineticsRelTol && zero == 0.0;
  o.detail = "raw=" + fmt(raw, 12) + " J, hourly=" + fmt(hourly, 12) + " kcal/h, static=" + fmt(zero);
  return o;
}

Outcome kinetics_properties() {
  const auto t0 = Clock::now();
  std::mt19937_64 g(20240601);
  const auto ntu = ntu25_body_model();
  const auto dy = oracle::dyadic_model();
  int dyadic_mismatch = 0;
  int reversal_mismatch = 0;
  double worst_scale = 0.0;
  double worst_generic_shift = 0.0;
  constexpr int kSequences = 100;
  for (int i = 0; i < kSequences; ++i) {
    const auto grid = oracle::dyadic_sequence(g, 10 + i % 9, 30.0);
    const Vec3 d{std::ldexp(static_cast<double>(g() % 8192) - 4096.0, -9), 0.375, -2.0};
    if (energy(oracle::translated(grid, d), dy) != energy(grid, dy)) ++dyadic_mismatch;

    const auto s = random_ntu(g, 10 + i % 23);
    const double e = energy(s, ntu);
    const Vec3 shift{1.234, -0.5678, 2.5};
    worst_generic_shift = std::max(worst_generic_shift, rel_err(energy(oracle::translated(s, shift), ntu), e));
    for (double k : {0.5, 2.0}) worst_scale = std::max(worst_scale, rel_err(energy(oracle::scaled(s, k), ntu), k * k * e));
    if (energy(oracle::reversed(s), ntu) != e) ++reversal_mismatch;
    if (energy(oracle::reversed(grid), dy) != energy(grid, dy)) ++reversal_mismatch;
  }
  const double ms = ms_since(t0);
  Outcome o;
  o.pass = dyadic_mismatch == 0 && reversal_mismatch == 0 && worst_scale < kScalingRelTol &&
           worst_generic_shift <= kGenericTranslationRelTol && ms < kPropertyMaxMs;
  o.detail = std::to_string(kSequences) + " sequences: translation exact on dyadic grid (" +
             std::to_string(dyadic_mismatch) + " mismatches), arbitrary-coordinate translation rel err " +
             fmt(worst_generic_shift, 3) + ", scaling rel err " + fmt(worst_scale, 3) + ", reversal mismatches " +
             std::to_string(reversal_mismatch) + ", " + fmt(ms, 4) + " ms";
  return o;
}

Outcome annotation_band() {
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> lcat(1.0, 1000.0);
  std::uniform_real_distribution<double> en(0.0, 2000.0);
  const AnnotationConfig cfg;
  int band_miss = 0;
  double worst_sym = 0.0;
  int degenerate_miss = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const CategoryAnnotation cat{"c", lcat(g), kSourceCompendium};
    const double half = 0.5 * (cat.kcal_per_hour / cfg.l_max) * cfg.f_max;
    std::vector<SampleEnergy> es;
    const int n = 2 + static_cast<int>(g() % 40);
    for (int i = 0; i < n; ++i) es.push_back({"s" + std::to_string(i), en(g)});
    es[0].energy = es[1].energy + 1.0;  // guarantees E_max > E_min
    const auto out = sample_annotations(cat, es, cfg);
    double lo = out[0].kcal_per_hour, hi = lo;
    for (const auto& a : out) lo = std::min(lo, a.kcal_per_hour), hi = std::max(hi, a.kcal_per_hour);
    if (lo != cat.kcal_per_hour - half || hi != cat.kcal_per_hour + half) ++band_miss;

    std::vector<SampleEnergy> sym;
    const double c = en(g) + 500.0;
    for (int i = 0; i < n; ++i) {
      const double d = en(g) / 4.0;
      sym.push_back({"p" + std::to_string(i), c + d});
      sym.push_back({"m" + std::to_string(i), c - d});
    }
    double total = 0.0;
    for (const auto& a : sample_annotations(cat, sym, cfg)) total += a.kcal_per_hour;
    worst_sym = std::max(worst_sym, std::fabs(total / static_cast<double>(sym.size()) - cat.kcal_per_hour));

    std::vector<SampleEnergy> flat(static_cast<std::size_t>(n), {"f", 42.0});
    for (const auto& a : sample_annotations(cat, flat, cfg)) {
      if (a.kcal_per_hour != cat.kcal_per_hour) ++degenerate_miss;
    }
  }
  Outcome o;
  o.pass = band_miss == 0 && worst_sym <= kSymmetricMeanTol && degenerate_miss == 0;
  o.detail = "1000 batches: band edge mismatches " + std::to_string(band_miss) + ", symmetric mean err " +
             fmt(worst_sym, 3) + ", degenerate mismatches " + std::to_string(degenerate_miss);
  return o;
}

Outcome soft_labels() {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> lab(0.0, 1000.0);
  double worst_norm = 0.0;
  double worst_decode = 0.0;
  const std::vector<double> sigmas{5.0, 15.0, 25.0, 50.0};
  for (double sigma : sigmas) {
    const SoftLabelCodec c{1000, 1.0, sigma};
    std::uniform_real_distribution<double> interior(4 * sigma, 999.0 - 4 * sigma);
    for (int i = 0; i < 1000; ++i) {
      const auto d = encode(lab(g), c);
      double s = 0.0;
      for (double p : d.probs()) s += p;
      worst_norm = std::max(worst_norm, std::fabs(s - 1.0));
      const double l = interior(g);
      worst_decode = std::max(worst_decode, std::fabs(decode(encode(l, c), c) - l));
    }
  }
  bool entropy_increasing = true;
  double prev = -1.0;
  for (double sigma : sigmas) {
    const double h = entropy(encode(500.0, {1000, 1.0, sigma}));
    entropy_increasing &= h > prev;
    prev = h;
  }
  int kl_self_nonzero = 0;
  int kl_negative = 0;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto p = encode(lab(g), {1000, 1.0, 1.0 + 49.0 * u(g)});
    std::vector<double> w(1000);
    for (auto& x : w) x = u(g) < 0.3 ? 0.0 : u(g);
    w[0] = 1.0;
    const auto q = CalorieDistribution::normalized(std::move(w));
    if (kl_loss(p, p) != 0.0 || kl_loss(q, q) != 0.0) ++kl_self_nonzero;
    if (kl_loss(q, p) < 0.0 || kl_loss(p, q) < 0.0) ++kl_negative;
  }
  Outcome o;
  o.pass = worst_norm <= kNormTol && entropy_increasing && worst_decode <= kDecodeTol && kl_self_nonzero == 0 &&
           kl_negative == 0;
  o.detail = "max |sum-1|=" + fmt(worst_norm, 3) + ", entropy increasing=" + (entropy_increasing ? "yes" : "no") +
             ", max decode err=" + fmt(worst_decode, 3) + " kcal, KL(p,p)!=0: " + std::to_string(kl_self_nonzero) +
             ", KL<0: " + std::to_string(kl_negative);
  return o;
}

Outcome spearman_oracle() {
  double worst = 0.0;
  int definedness_mismatch = 0;
  std::vector<double> base{1, 2, 3, 4, 5};
  std::vector<double> perm = base;
  int perms = 0;
  do {
    worst = std::max(worst, std::fabs(*spearman_pct(perm, base) - oracle::spearman_pct(perm, base)));
    ++perms;
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::mt19937_64 g(6);
  int transform_mismatch = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + g() % 7;
    std::vector<double> a(n), b(n);
    for (auto& x : a) x = static_cast<double>(g() % 5);
    for (auto& x : b) x = static_cast<double>(g() % 5);
    const auto got = spearman_pct(a, b);
    const double want = oracle::spearman_pct(a, b);
    if (std::isnan(want) != !got.has_value()) {
      ++definedness_mismatch;
      continue;
    }
    if (!got) continue;
    worst = std::max(worst, std::fabs(*got - want));
    std::vector<double> ta, tb;
    for (double x : a) ta.push_back(std::exp(x) - 3.0);
    for (double x : b) tb.push_back(x * x * x + 2.0 * x);
    const auto t = spearman_pct(ta, tb);
    if (!t || *t != *got || average_ranks(ta) != average_ranks(a)) ++transform_mismatch;
  }
  Outcome o;
  o.pass = perms == 120 && worst <= kSpearmanTol && definedness_mismatch == 0 && transform_mismatch == 0;
  o.detail = std::to_string(perms) + " permutations + 1000 tied vectors: max |d|=" + fmt(worst, 3) +
             ", undefined mismatches " + std::to_string(definedness_mismatch) + ", monotone-transform changes " +
             std::to_string(transform_mismatch);
  return o;
}

Outcome baseline_calibration() {
  RandomPredictor rnd(2024, 0.0, 1000.0);
  constexpr int kDraws = 1000000;
  std::vector<double> preds(kDraws);
  for (auto& p : preds) p = rnd.predict();
  const std::vector<double> gts(kDraws, 500.0);
  const double random_mae = mae(preds, gts);

  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> u(50.0, 900.0);
  std::vector<double> train(700), test(300);
  for (auto& x : train) x = u(g);
  for (auto& x : test) x = u(g);
  const AveragePredictor avg(train);
  double train_mean = 0.0;
  for (double x : train) train_mean += x;
  train_mean /= static_cast<double>(train.size());
  double mad = 0.0;
  for (double x : test) mad += std::fabs(x - train_mean);
  mad /= static_cast<double>(test.size());
  const std::vector<double> avg_preds(test.size(), avg.predict());
  const double avg_mae = mae(avg_preds, test);

  Outcome o;
  o.pass = std::fabs(random_mae - kRandomMaeExpected) <= kRandomMaeTol && std::fabs(avg_mae - mad) <= kAverageMaeTol;
  o.detail = "random MAE=" + fmt(random_mae, 8) + " over 1e6 draws (expected 250 +- 1), average MAE=" +
             fmt(avg_mae, 12) + " vs deviation about train mean " + fmt(mad, 12);
  return o;
}

Outcome split_invariants() {
  std::vector<SampleRef> samples;
  for (int a = 0; a < 12; ++a) {
    for (int s = 0; s < 20; ++s) {
      char id[32];
      std::snprintf(id, sizeof(id), "a%02d_s%03d", a, s);
      samples.push_back({id, "activity_" + std::to_string(a)});
    }
  }
  const std::set<std::string> heldout{"activity_3", "activity_11"};
  const auto t0 = Clock::now();
  int partition_errors = 0;
  int heldout_errors = 0;
  int ratio_errors = 0;
  int determinism_errors = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto m = build_splits(samples, heldout, seed);
    std::map<std::string, int> train_per_activity, known_per_activity;
    for (const auto& s : samples) {
      const int hits = m.train.contains(s.sample_id) + m.test_known.contains(s.sample_id) +
                       m.test_new.contains(s.sample_id);
      if (hits != 1) ++partition_errors;
      const bool is_new = m.test_new.contains(s.sample_id);
      if (is_new != heldout.contains(s.activity)) ++heldout_errors;
      if (m.train.contains(s.sample_id)) ++train_per_activity[s.activity];
      if (m.test_known.contains(s.sample_id)) ++known_per_activity[s.activity];
    }
    if (m.train.size() + m.test_known.size() + m.test_new.size() != samples.size()) ++partition_errors;
    for (int a = 0; a < 12; ++a) {
      const auto name = "activity_" + std::to_string(a);
      if (heldout.contains(name)) continue;
      const int n = train_per_activity[name] + known_per_activity[name];
      if (std::fabs(train_per_activity[name] - 0.7 * n) > 1.0) ++ratio_errors;
    }
    if (format_manifest(m) != format_manifest(build_splits(samples, heldout, seed))) ++determinism_errors;
  }
  const double ms = ms_since(t0);
  Outcome o;
  o.pass = partition_errors == 0 && heldout_errors == 0 && ratio_errors == 0 && determinism_errors == 0 &&
           ms < kSplitMaxMs;
  o.detail = "100 seeds: partition errors " + std::to_string(partition_errors) + ", heldout leaks " +
             std::to_string(heldout_errors) + ", ratio violations " + std::to_string(ratio_errors) +
             ", non-identical reruns " + std::to_string(determinism_errors) + ", " + fmt(ms, 4) + " ms";
  return o;
}

Outcome end_to_end() {
  oracle::TempDir dir("acceptance");
  const auto sk = (dir / "skeletons.jsonl").string();
  const auto ann = (dir / "annotations.csv").string();
  const auto man = (dir / "manifest.csv").string();
  const auto pred = (dir / "predictions.csv").string();
  const auto rep = (dir / "report.csv").string();
  std::ostringstream sink;

  const auto t0 = Clock::now();
  // Heldout activities are the two highest amplitude tiers, outside the range
  // the known activities cover.
  const std::vector<std::vector<std::string>> steps{
      {"synth", "--activities", "12", "--samples", "20", "--seed", "11", "--out", sk},
      {"annotate", "--skeletons", sk, "--out", ann},
      {"split", "--annotations", ann, "--heldout", "activity_10,activity_11", "--seed", "3", "--out", man},
      {"predict", "--skeletons", sk, "--out", pred},
      {"eval", "--annotations", ann, "--manifest", man, "--predictions", pred, "--out", rep},
  };
  for (const auto& args : steps) {
    if (const int code = cli::run(args, sink, sink); code != 0) {
      return {false, "'" + args.front() + "' exited with " + std::to_string(code) + ": " + sink.str()};
    }
  }
  const double ms = ms_since(t0);

  // Report rows.
  std::map<std::string, double> mae_by_split;
  for (const auto& line : io::read_lines(rep)) {
    const auto f = io::split_fields(line);
    double v = 0.0;
    if (f.size() == 5 && io::parse_double(f[2], v)) mae_by_split[f[0]] = v;
  }

  // Within-category rank agreement, against the full-precision sample labels
  // (files carry one decimal, which can tie neighbouring samples).
  const auto seqs = parse_skeleton_file(sk);
  std::map<std::string, double> predicted;
  for (const auto& p : load_predictions(pred)) predicted[p.sample_id] = p.kcal_per_hour;
  std::map<std::string, std::vector<SampleEnergy>> energies;
  for (const auto& s : seqs) {
    energies[s.activity()].push_back({s.sample_id(), sequence_hourly_kcal(s, ntu25_body_model(), {}).hourly_kcal});
  }
  double worst_spc = 100.0;
  for (const auto& [activity, es] : energies) {
    double mean = 0.0;
    for (const auto& e : es) mean += e.energy;
    mean /= static_cast<double>(es.size());
    const auto labels = sample_annotations(category_annotation(activity, {std::nullopt, std::nullopt, mean}), es, {});
    std::vector<double> p, t;
    for (const auto& l : labels) {
      p.push_back(predicted.at(l.sample_id));
      t.push_back(l.kcal_per_hour);
    }
    const auto spc = spearman_pct(p, t);
    worst_spc = std::min(worst_spc, spc ? *spc : -1000.0);
  }

  const double known = mae_by_split.count("test_known") ? mae_by_split["test_known"] : NAN;
  const double fresh = mae_by_split.count("test_new") ? mae_by_split["test_new"] : NAN;
  Outcome o;
  o.pass = ms < kPipelineMaxMs && worst_spc == 100.0 && fresh > known;
  o.detail = "12x20 corpus in " + fmt(ms, 4) + " ms; min per-category SPC=" + fmt(worst_spc, 10) +
             "; MAE test_known=" + fmt(known) + ", test_new=" + fmt(fresh);
  return o;
}

Outcome paper_literal_mode() {
  const auto model = oracle::single_region_model(1.0);
  const auto seq = oracle::constant_velocity(1.0, 30.0, 31);
  const double raw = energy(seq, model);
  const double literal = hourly_kcal(raw, 31, 30.0, {ConversionMode::kPaperLiteral});
  const double dim = hourly_kcal(raw, 31, 30.0, {ConversionMode::kDimensional});
  Outcome o;
  o.pass = rel_err(literal, 12002.58) <= kKineticsRelTol && literal != dim;
  o.detail = "literal=" + fmt(literal, 12) + " kcal/h, dimensional=" + fmt(dim, 12) + " kcal/h";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = false;
  for (int i = 1; i < argc; ++i) strict |= std::string(argv[i]) == "--strict";

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Keytel exactness", keytel_exactness},
      {"kinetics oracle", kinetics_oracle},
      {"kinetics properties", kinetics_properties},
      {"sample annotation band", annotation_band},
      {"soft-label suite", soft_labels},
      {"SPC exact oracle", spearman_oracle},
      {"random-baseline calibration", baseline_calibration},
      {"split invariants", split_invariants},
      {"end-to-end pipeline", end_to_end},
      {"paper-literal mode", paper_literal_mode},
  };

  std::cout << "kernels: " << simd::isa_name(simd::active().isa) << "\n";
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const bool expected_fail = kExpectedFailures.contains(id);
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
              << o.detail;
    if (!o.pass && expected_fail) std::cout << " [known failure]";
    std::cout << "\n";
    if (!o.pass && (strict || !expected_fail)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
