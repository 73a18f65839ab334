#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "classify/ensemble.hpp"
#include "core/trace_io.hpp"
#include "detection/detect.hpp"
#include "features/features.hpp"
#include "helpers.hpp"
#include "synth/synth.hpp"
#include "transitions/scan.hpp"

using namespace wristleak;
using wristleak::testing::random_digits;

namespace {

SynthConfig sh_config(uint64_t seed, double noise = 0.0, double amplitude = 10.0) {
  SynthConfig c;
  c.scenario = Scenario::SH;
  c.noise_sigma = noise;
  c.spike_amplitude = amplitude;
  c.seed = seed;
  c.signatures = default_signatures();
  return c;
}

SynthConfig dh_config(uint64_t seed, double noise = 0.0, double min_ms = 400,
                      double max_ms = 900) {
  SynthConfig c;
  c.scenario = Scenario::DH;
  c.noise_sigma = noise;
  c.seed = seed;
  c.min_duration_ms = min_ms;
  c.max_duration_ms = max_ms;
  c.signatures = default_signatures();
  return c;
}

// A digit walk whose consecutive transitions cover every direction at least
// min_count times; deterministic for a given seed.
std::string covering_walk(uint64_t seed, size_t min_count) {
  Rng rng(seed);
  std::string keys = "5";
  std::map<Direction, size_t> counts;
  while (true) {
    bool done = counts.size() == kDirectionCount;
    for (const auto& [_, c] : counts) done &= c >= min_count;
    if (done && counts.size() == kDirectionCount) break;
    const char next = static_cast<char>('0' + rng.below(10));
    ++counts[direction_of(keys.back(), next)];
    keys.push_back(next);
  }
  return keys;
}

}  // namespace

TEST_CASE("generate_sh: zero-noise peak energy equals the configured amplitude") {
  const auto [trace, labels] = generate_sh(sh_config(1), "5");
  REQUIRE(labels.events.size() == 1);
  const EnergySeries e = energy(trace);
  const double peak = *std::max_element(e.values.begin(), e.values.end());
  CHECK(peak == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("generate_sh: one label per key, detection recovers them all") {
  const std::string keys = [] {
    Rng rng(2);
    return random_digits(rng, 100);
  }();
  const auto [trace, labels] = generate_sh(sh_config(7, 0.2), keys);
  CHECK(labels.events.size() == 100);
  const Threshold thr = set_threshold(trace, labels);
  const DetectionResult r = detect_keypresses(trace, thr);
  CHECK(r.records.size() == 100);
  for (const auto& rec : r.records) CHECK(rec.samples.size() == kKeystrokeSamples);
}

TEST_CASE("generate_sh: identical config and keys reproduce the trace byte for byte") {
  const auto a = generate_sh(sh_config(42, 0.5), "8675309");
  const auto b = generate_sh(sh_config(42, 0.5), "8675309");
  CHECK(serialize_trace(a.first) == serialize_trace(b.first));
  CHECK(serialize_labels(a.second) == serialize_labels(b.second));
}

TEST_CASE("generate_sh: distinct keys produce distinct feature vectors at zero noise") {
  const std::string keys = "0123456789";
  const auto [trace, labels] = generate_sh(sh_config(3), keys);
  const Threshold thr = set_threshold(trace, labels);
  DetectionResult r = detect_keypresses(trace, thr);
  REQUIRE(r.records.size() == 10);
  std::vector<FeatureVector> vectors;
  for (const auto& rec : r.records) vectors.push_back(keystroke_features(rec));
  for (size_t a = 0; a < vectors.size(); ++a) {
    for (size_t b = a + 1; b < vectors.size(); ++b) {
      double d2 = 0.0;
      for (size_t j = 0; j < vectors[a].values.size(); ++j) {
        const double diff = vectors[a].values[j] - vectors[b].values[j];
        d2 += diff * diff;
      }
      CHECK(std::sqrt(d2) > 1.0);
    }
  }
}

TEST_CASE("generate_sh: validation errors") {
  CHECK_THROWS_AS(generate_sh(sh_config(1), ""), ValidationError);
  CHECK_THROWS_AS(generate_sh(sh_config(1), "4a"), ValidationError);
  CHECK_THROWS_AS(generate_sh(dh_config(1), "44"), ValidationError);
  SynthConfig bad = sh_config(1);
  bad.min_spacing_ms = 100.0;  // below the settling floor
  CHECK_THROWS_AS(SynthConfig::from_json(bad.to_json()), ValidationError);
}

TEST_CASE("generate_dh: one segment per key pair with its direction signature") {
  const auto [trace, labels] = generate_dh(dh_config(5), "41");
  REQUIRE(labels.events.size() == 2);
  const auto records = segment_transitions(trace, labels);
  REQUIRE(records.size() == 1);
  CHECK(records[0].label == Direction::N);
  CHECK(records[0].samples.size() >= 20);  // at least 400 ms at 50 Hz
}

TEST_CASE("generate_dh: segment durations stay within the configured range") {
  Rng rng(6);
  for (int iter = 0; iter < 10; ++iter) {
    const std::string keys = random_digits(rng, 8);
    const auto config = dh_config(rng.next_u64(), 0.0, 300, 700);
    const auto [trace, labels] = generate_dh(config, keys);
    REQUIRE(labels.events.size() == keys.size());
    for (size_t j = 0; j + 1 < labels.events.size(); ++j) {
      const int64_t ms = labels.events[j + 1].t - labels.events[j].t;
      CHECK(ms >= 280);  // one-sample rounding slack
      CHECK(ms <= 720);
    }
  }
}

TEST_CASE("generate_dh: reproducible and validates input") {
  const auto a = generate_dh(dh_config(11, 0.3), "314159");
  const auto b = generate_dh(dh_config(11, 0.3), "314159");
  CHECK(serialize_trace(a.first) == serialize_trace(b.first));
  CHECK_THROWS_AS(generate_dh(dh_config(11), "4"), ValidationError);
}

TEST_CASE("generate_dh: direction classes are separable in feature space at zero noise") {
  const std::string keys = covering_walk(31, 2);
  const auto [trace, labels] = generate_dh(dh_config(13), keys);
  const auto records = segment_transitions(trace, labels);
  std::map<Direction, std::vector<FeatureVector>> by_dir;
  for (const auto& r : records) by_dir[*r.label].push_back(transition_features(r));
  REQUIRE(by_dir.size() == kDirectionCount);
  // Mean vectors of different directions stay far apart.
  std::map<Direction, std::vector<double>> means;
  for (const auto& [dir, vecs] : by_dir) {
    std::vector<double> mu(vecs.front().values.size(), 0.0);
    for (const auto& v : vecs) {
      for (size_t j = 0; j < mu.size(); ++j) mu[j] += v.values[j];
    }
    for (auto& x : mu) x /= static_cast<double>(vecs.size());
    means[dir] = std::move(mu);
  }
  for (auto a = means.begin(); a != means.end(); ++a) {
    for (auto b = std::next(a); b != means.end(); ++b) {
      double d2 = 0.0;
      for (size_t j = 0; j < a->second.size(); ++j) {
        const double diff = a->second[j] - b->second[j];
        d2 += diff * diff;
      }
      CHECK(std::sqrt(d2) > 1.0);
    }
  }
}

TEST_CASE("end-to-end: zero-noise transition scan recovers the exact direction sequence") {
  // Train a transition model on a generated walk, then scan a fresh trace.
  const std::string train_keys = covering_walk(17, 3);
  const auto [train_trace, train_labels] = generate_dh(dh_config(19), train_keys);
  const auto train_records = segment_transitions(train_trace, train_labels);
  std::vector<FeatureVector> train_vectors;
  for (const auto& r : train_records) train_vectors.push_back(transition_features(r));

  TrainConfig config;
  config.seed = 5;
  config.rf_trees = 25;
  config.bdt_trees = 10;
  config.svm_epochs = 5;
  const TrainedModel model = TrainedModel::fit(train_vectors, config);

  const std::string test_keys = "41692";  // N, SE, S, NW: all adjacent pairs distinct
  const auto [test_trace, test_labels] = generate_dh(dh_config(23), test_keys);
  const ScanResult result = scan_transitions(test_trace, model);

  const DirectionSequence expected = [&] {
    DirectionSequence dirs;
    for (size_t i = 0; i + 1 < test_keys.size(); ++i) {
      dirs.emplace_back(direction_of(test_keys[i], test_keys[i + 1]));
    }
    return dirs;
  }();
  const DirectionSequence scanned = result.directions();
  REQUIRE(scanned.size() == expected.size());
  for (size_t i = 0; i < expected.size(); ++i) CHECK(*scanned[i] == *expected[i]);
  // Boundaries come out in chronological order.
  for (size_t i = 1; i < result.transitions.size(); ++i) {
    CHECK(result.transitions[i].boundary_index > result.transitions[i - 1].boundary_index);
  }
}

TEST_CASE("scan_transitions validates its inputs") {
  const std::string train_keys = covering_walk(17, 2);
  const auto [train_trace, train_labels] = generate_dh(dh_config(19), train_keys);
  const auto train_records = segment_transitions(train_trace, train_labels);
  std::vector<FeatureVector> train_vectors;
  for (const auto& r : train_records) train_vectors.push_back(transition_features(r));
  TrainConfig config;
  config.seed = 5;
  config.rf_trees = 5;
  config.bdt_trees = 5;
  config.svm_epochs = 2;
  const TrainedModel model = TrainedModel::fit(train_vectors, config);

  SensorTrace tiny;
  tiny.nominal_rate_hz = 50.0;
  for (int i = 0; i < 5; ++i) {
    SensorSample s;
    s.t = 20 * i;
    tiny.samples.push_back(s);
  }
  CHECK_THROWS_AS(scan_transitions(tiny, model), ValidationError);

  Rng rng(3);
  std::vector<FeatureVector> wrong;
  for (int i = 0; i < 12; ++i) {
    FeatureVector v = keystroke_features(wristleak::testing::random_record(rng));
    v.label = i % 2 ? "1" : "2";
    wrong.push_back(std::move(v));
  }
  const TrainedModel wrong_model = TrainedModel::fit(wrong, config);
  const auto [trace, labels] = generate_dh(dh_config(29), "41");
  CHECK_THROWS_AS(scan_transitions(trace, wrong_model), ValidationError);
}
