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

#include <doctest.h>

#include <random>

#include "kcalpose/error.hpp"
#include "kcalpose/kinetics.hpp"
#include "kcalpose/simd/kernels.hpp"
#include "oracles.hpp"

using namespace kcalpose;

namespace {

SkeletonSequence random_ntu(std::mt19937_64& g, std::size_t frames) {
  SynthParams p;
  p.frames = frames;
  p.seed = g();
  p.amplitude_m = std::uniform_real_distribution<double>(0.01, 0.5)(g);
  p.freq_hz = std::uniform_real_distribution<double>(0.2, 3.0)(g);
  return synth_sequence(p);
}

double energy(const SkeletonSequence& s, const BodyModel& m) { return body_energy(region_centroids(s, m), m); }

}  // namespace

TEST_CASE("constant velocity: 1 kg at 1 m/s for 1 s") {
  const auto model = oracle::single_region_model(1.0);
  const auto seq = oracle::constant_velocity(1.0, 30.0, 31);
  const double raw = energy(seq, model);
  // 30 transitions, each 1/2 * 1 kg * (1 m/s)^2.
  CHECK(raw == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(raw == doctest::Approx(oracle::body_energy(seq, model)).epsilon(1e-12));

  ConversionConfig dim;
  CHECK(hourly_kcal(raw, 31, 30.0, dim) == doctest::Approx(15.0 * 3600 * 0.239 / 1000).epsilon(1e-12));
  CHECK(hourly_kcal(raw, 31, 30.0, dim) == doctest::Approx(12.906).epsilon(1e-9));

  ConversionConfig lit{ConversionMode::kPaperLiteral};
  CHECK(hourly_kcal(raw, 31, 30.0, lit) == doctest::Approx(15.0 * 0.239 * 31 * 30 * 3600 / 1000).epsilon(1e-12));
  CHECK(hourly_kcal(raw, 31, 30.0, lit) == doctest::Approx(12002.58).epsilon(1e-9));
}

TEST_CASE("hourly conversion is per-unit-time in dimensional mode") {
  // Twice the clip length at the same mean power gives the same hourly rate.
  const auto model = oracle::single_region_model(2.0);
  ConversionConfig dim;
  const auto short_seq = oracle::constant_velocity(1.5, 25.0, 26);
  const auto long_seq = oracle::constant_velocity(1.5, 25.0, 51);
  const double a = hourly_kcal(energy(short_seq, model), 26, 25.0, dim);
  const double b = hourly_kcal(energy(long_seq, model), 51, 25.0, dim);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("static sequences have exactly zero energy") {
  std::vector<Vec3> joints;
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int j = 0; j < 25; ++j) joints.push_back({u(g), u(g), u(g)});
  std::vector<Vec3> all;
  for (int t = 0; t < 40; ++t) all.insert(all.end(), joints.begin(), joints.end());
  const SkeletonSequence s("still", "sit", 30, 25, all);
  CHECK(energy(s, ntu25_body_model()) == 0.0);
  CHECK(sequence_hourly_kcal(s, ntu25_body_model(), {}).hourly_kcal == 0.0);
}

TEST_CASE("body energy matches the loop oracle on random sequences") {
  std::mt19937_64 g(2024);
  const auto model = ntu25_body_model().with_weights({1.5, 1, 0.5, 0.5, 2, 2, 1, 0.25});
  for (int i = 0; i < 50; ++i) {
    const auto s = random_ntu(g, 8 + i);
    CHECK(energy(s, model) == doctest::Approx(oracle::body_energy(s, model)).epsilon(1e-12));
  }
}

TEST_CASE("region weights scale their own contribution") {
  std::mt19937_64 g(5);
  const auto s = random_ntu(g, 20);
  const auto base = ntu25_body_model();
  std::array<double, 8> zero{};
  double parts = 0.0;
  for (std::size_t r = 0; r < 8; ++r) {
    auto w = zero;
    w[r] = 1.0;
    parts += energy(s, base.with_weights(w));
  }
  CHECK(parts == doctest::Approx(energy(s, base)).epsilon(1e-12));
  CHECK(energy(s, base.with_weights(zero)) == 0.0);
}

TEST_CASE("translation invariance") {
  SUBCASE("exact on a dyadic grid") {
    std::mt19937_64 g(77);
    const auto model = oracle::dyadic_model();
    for (int i = 0; i < 100; ++i) {
      const auto s = oracle::dyadic_sequence(g, 12, 30.0);
      const Vec3 d{std::ldexp(static_cast<double>(g() % 4096) - 2048.0, -8), -0.75, 3.5};
      CHECK(energy(oracle::translated(s, d), model) == energy(s, model));
    }
  }
  SUBCASE("within rounding for arbitrary coordinates") {
    std::mt19937_64 g(78);
    const auto model = ntu25_body_model();
    for (int i = 0; i < 100; ++i) {
      const auto s = random_ntu(g, 16);
      const Vec3 d{0.3137, -1.72, 2.05};
      CHECK(energy(oracle::translated(s, d), model) == doctest::Approx(energy(s, model)).epsilon(1e-9));
    }
  }
}

TEST_CASE("quadratic scaling and exact reversal invariance") {
  std::mt19937_64 g(79);
  const auto model = ntu25_body_model();
  for (int i = 0; i < 100; ++i) {
    const auto s = random_ntu(g, 10 + i % 7);
    const double e = energy(s, model);
    for (double k : {0.5, 2.0, 3.0}) {
      CHECK(energy(oracle::scaled(s, k), model) == doctest::Approx(k * k * e).epsilon(1e-9));
    }
    CHECK(energy(oracle::reversed(s), model) == e);
  }
}

TEST_CASE("symmetric sum pairs terms from both ends") {
  CHECK(symmetric_sum(std::vector<double>{}) == 0.0);
  CHECK(symmetric_sum(std::vector<double>{4.0}) == 4.0);
  CHECK(symmetric_sum(std::vector<double>{1, 2, 3, 4, 5}) == 15.0);
  const std::vector<double> t{1e16, 1.0, -1e16, 3.0};
  std::vector<double> r(t.rbegin(), t.rend());
  CHECK(symmetric_sum(t) == symmetric_sum(r));
}

TEST_CASE("transition energies are frame ordered") {
  const auto model = oracle::single_region_model(2.0);
  std::vector<std::vector<Vec3>> frames;
  const double xs[] = {0.0, 0.1, 0.3, 0.3};
  for (double x : xs) {
    std::vector<Vec3> f{{x, 0, 0}};
    for (int r = 1; r < 8; ++r) f.push_back({0, 0, 0});
    frames.push_back(f);
  }
  const SkeletonSequence s("t", "a", 10.0, frames);
  const auto terms = transition_energies(region_centroids(s, model), model);
  REQUIRE(terms.size() == 3);
  CHECK(terms[0] == doctest::Approx(0.5 * 2.0 * 1.0).epsilon(1e-12));  // 1 m/s
  CHECK(terms[1] == doctest::Approx(0.5 * 2.0 * 4.0).epsilon(1e-12));  // 2 m/s
  CHECK(terms[2] == 0.0);
}

TEST_CASE("conversion modes") {
  CHECK(parse_conversion_mode("dimensional") == ConversionMode::kDimensional);
  CHECK(parse_conversion_mode("paper-literal") == ConversionMode::kPaperLiteral);
  CHECK(parse_conversion_mode("paper_literal") == ConversionMode::kPaperLiteral);
  CHECK_THROWS_AS(parse_conversion_mode("watts"), Error);
  CHECK(to_string(ConversionMode::kPaperLiteral) == "paper-literal");

  ConversionConfig bad;
  bad.cal_per_joule = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_THROWS_AS(hourly_kcal(1.0, 1, 30.0, {}), Error);
  CHECK_THROWS_AS(hourly_kcal(-1.0, 10, 30.0, {}), Error);
}

TEST_CASE("energy report lists one row per sample") {
  std::mt19937_64 g(4);
  std::vector<EnergyEstimate> est;
  for (int i = 0; i < 3; ++i) est.push_back(sequence_hourly_kcal(random_ntu(g, 12), ntu25_body_model(), {}));
  const auto text = format_energy_report(est);
  CHECK(text.rfind("sample_id,activity,raw_energy_j,duration_s,hourly_kcal,mode\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  CHECK(est[0].duration_s == doctest::Approx(11.0 / 30.0));
}

TEST_CASE("kernel dispatch reports an isa") {
  const auto name = simd::isa_name(simd::active().isa);
  CHECK((name == "scalar" || name == "avx2" || name == "neon"));
}
