#include <doctest.h>

#include <cmath>

#include "detection/detect.hpp"
#include "helpers.hpp"
#include "synth/synth.hpp"

using namespace wristleak;
using wristleak::testing::sample_at;

namespace {

SensorTrace flat_trace(size_t n, double level = 0.0) {
  SensorTrace t;
  t.nominal_rate_hz = 50.0;
  for (size_t i = 0; i < n; ++i) {
    t.samples.push_back(sample_at(static_cast<int64_t>(20 * i), level, 0, 0));
  }
  return t;
}

// Adds an instantaneous energy spike of the given height at one sample.
void add_spike(SensorTrace& t, size_t index, double height) {
  t.samples[index].ay += height;
}

}  // namespace

TEST_CASE("energy of reference samples") {
  SensorTrace t;
  t.nominal_rate_hz = 50.0;
  t.samples = {sample_at(0, 0, 0, 0), sample_at(20, 1.0, -2.0, 0.5)};
  const EnergySeries e = energy(t);
  CHECK(e.values[0] == 0.0);
  CHECK(e.values[1] == doctest::Approx(3.5));

  const SensorTrace c = [] {
    SensorTrace x;
    x.nominal_rate_hz = 50.0;
    for (int i = 0; i < 5; ++i) x.samples.push_back(sample_at(20 * i, 1, 1, 1));
    return x;
  }();
  for (double v : energy(c).values) CHECK(v == doctest::Approx(3.0));

  CHECK_THROWS_AS(energy(SensorTrace{}), ValidationError);
}

TEST_CASE("set_threshold averages the four-sample press windows") {
  SUBCASE("constant window gives the constant") {
    SensorTrace t = flat_trace(20, 2.5);  // energy 2.5 everywhere
    LabelStream labels;
    labels.events = {{t.samples[5].t, '1'}};
    const Threshold thr = set_threshold(t, labels);
    CHECK(thr.value == doctest::Approx(2.5));
    CHECK(thr.trained_on == 1);
  }

  SUBCASE("two presses average their window means") {
    SensorTrace t = flat_trace(40);
    // Press one: window mean 4; press two: window mean 6.
    for (size_t i = 4; i <= 7; ++i) t.samples[i].ax = 4.0;
    for (size_t i = 19; i <= 22; ++i) t.samples[i].ax = 6.0;
    LabelStream labels;
    labels.events = {{t.samples[5].t, '1'}, {t.samples[20].t, '2'}};
    const Threshold thr = set_threshold(t, labels);
    CHECK(thr.value == doctest::Approx(5.0));
    CHECK(thr.trained_on == 2);
  }

  SUBCASE("no labels is an error") {
    SensorTrace t = flat_trace(20, 1.0);
    CHECK_THROWS_AS(set_threshold(t, LabelStream{}), ValidationError);
  }

  SUBCASE("label outside the trace range is an error") {
    SensorTrace t = flat_trace(20, 1.0);
    LabelStream labels;
    labels.events = {{t.samples[0].t, '1'}};  // no sample before index 0
    CHECK_THROWS_AS(set_threshold(t, labels), ValidationError);
    labels.events = {{t.samples[19].t, '1'}};  // needs 2 samples after
    CHECK_THROWS_AS(set_threshold(t, labels), ValidationError);
  }

  SUBCASE("synthetic labeled trace matches an independent recomputation") {
    SynthConfig config;
    config.scenario = Scenario::SH;
    config.noise_sigma = 0.0;
    config.spike_amplitude = 8.0;
    config.seed = 11;
    const auto [trace, labels] = generate_sh(config, "0918273645");
    const Threshold thr = set_threshold(trace, labels);

    // Recompute from the raw trace: mean over presses of the 4-sample
    // energy window starting one sample before the label.
    const EnergySeries e = energy(trace);
    double acc = 0.0;
    for (const auto& event : labels.events) {
      size_t k = 0;
      while (k + 1 < trace.samples.size() && trace.samples[k + 1].t <= event.t) ++k;
      acc += (e.values[k - 1] + e.values[k] + e.values[k + 1] + e.values[k + 2]) / 4.0;
    }
    CHECK(thr.value == doctest::Approx(acc / static_cast<double>(labels.events.size())));
    CHECK(thr.value < 0.667 * config.spike_amplitude);  // presses clear 1.5x threshold
  }
}

TEST_CASE("detect_keypresses basics") {
  Threshold thr;
  thr.value = 1.0;
  thr.trained_on = 1;

  SUBCASE("all-zero trace yields nothing") {
    const DetectionResult r = detect_keypresses(flat_trace(100), thr);
    CHECK(r.records.empty());
    CHECK(r.edge_skipped == 0);
  }

  SUBCASE("trace shorter than one record is an error") {
    CHECK_THROWS_AS(detect_keypresses(flat_trace(17), thr), ValidationError);
  }

  SUBCASE("four spikes yield four 18-sample records with the crossing at index 3") {
    SensorTrace t = flat_trace(150);
    for (size_t onset : {10u, 40u, 70u, 100u}) add_spike(t, onset, 2.0);
    const DetectionResult r = detect_keypresses(t, thr);
    REQUIRE(r.records.size() == 4);
    for (size_t k = 0; k < 4; ++k) {
      const auto& rec = r.records[k];
      CHECK(rec.samples.size() == kKeystrokeSamples);
      CHECK(rec.detect_index == kDetectIndex);
      const size_t onset = 10 + 30 * k;
      CHECK(rec.samples.front().t == t.samples[onset - 3].t);
      CHECK(std::abs(rec.samples[3].ay) == doctest::Approx(2.0));
    }
  }

  SUBCASE("a second spike inside the skip window is not recorded twice") {
    SensorTrace t = flat_trace(100);
    add_spike(t, 30, 2.0);
    add_spike(t, 40, 2.0);  // 10 samples later: inside the 15-sample skip
    const DetectionResult r = detect_keypresses(t, thr);
    CHECK(r.records.size() == 1);
  }

  SUBCASE("spikes spaced beyond the skip window are both recorded") {
    SensorTrace t = flat_trace(100);
    add_spike(t, 30, 2.0);
    add_spike(t, 50, 2.0);
    CHECK(detect_keypresses(t, thr).records.size() == 2);
  }

  SUBCASE("edge crossings are tallied, not zero-padded") {
    SensorTrace t = flat_trace(60);
    add_spike(t, 1, 2.0);   // window would start before the trace
    add_spike(t, 58, 2.0);  // window would run past the end
    add_spike(t, 30, 2.0);
    const DetectionResult r = detect_keypresses(t, thr);
    CHECK(r.records.size() == 1);
    CHECK(r.edge_skipped == 2);
  }
}

TEST_CASE("detection invariants on randomized synthetic traces") {
  Rng rng(2024);
  for (int iter = 0; iter < 25; ++iter) {
    SynthConfig config;
    config.scenario = Scenario::SH;
    config.noise_sigma = 0.2;
    config.spike_amplitude = 10.0;
    config.seed = rng.next_u64();
    const std::string keys = wristleak::testing::random_digits(rng, 5 + rng.below(10));
    const auto [trace, labels] = generate_sh(config, keys);
    const Threshold thr = set_threshold(trace, labels);
    REQUIRE(config.spike_amplitude >= 1.5 * thr.value);

    const DetectionResult r = detect_keypresses(trace, thr);
    CHECK(r.records.size() == keys.size());  // recall on well-spaced spikes

    const EnergySeries e = energy(trace);
    int64_t prev_end = -1;
    for (const auto& rec : r.records) {
      CHECK(rec.samples.size() == kKeystrokeSamples);
      CHECK(rec.samples.front().t > prev_end);  // records never overlap
      prev_end = rec.samples.back().t;
      // The crossing sample really crosses.
      size_t k = 0;
      while (trace.samples[k].t != rec.detect_t()) ++k;
      CHECK(e.values[k] >= thr.value);
    }

    // Determinism: identical inputs give identical records.
    const DetectionResult again = detect_keypresses(trace, thr);
    REQUIRE(again.records.size() == r.records.size());
    for (size_t i = 0; i < r.records.size(); ++i) {
      CHECK(again.records[i].samples.front().t == r.records[i].samples.front().t);
    }
  }
}

TEST_CASE("label_records attaches the nearest unused label") {
  SynthConfig config;
  config.scenario = Scenario::SH;
  config.noise_sigma = 0.1;
  config.spike_amplitude = 10.0;
  config.seed = 3;
  const auto [trace, labels] = generate_sh(config, "314159");
  const Threshold thr = set_threshold(trace, labels);
  DetectionResult r = detect_keypresses(trace, thr);
  REQUIRE(r.records.size() == 6);
  label_records(r.records, labels);
  const std::string expected = "314159";
  for (size_t i = 0; i < r.records.size(); ++i) {
    REQUIRE(r.records[i].label.has_value());
    CHECK(*r.records[i].label == expected[i]);
  }
}
