#include "detection/detect.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace wristleak {

namespace {

// Greatest sample index with samples[k].t <= t, or -1 when t precedes the trace.
ptrdiff_t index_at_or_before(const SensorTrace& trace, int64_t t) {
  auto it = std::upper_bound(trace.samples.begin(), trace.samples.end(), t,
                             [](int64_t v, const SensorSample& s) { return v < s.t; });
  return static_cast<ptrdiff_t>(it - trace.samples.begin()) - 1;
}

}  // namespace

Threshold set_threshold(const SensorTrace& trace, const LabelStream& labels) {
  if (labels.events.empty()) throw ValidationError("set_threshold: no labeled key presses");
  const EnergySeries series = energy(trace);
  const ptrdiff_t n = static_cast<ptrdiff_t>(series.values.size());

  double sum = 0.0;
  for (const auto& event : labels.events) {
    const ptrdiff_t k = index_at_or_before(trace, event.t);
    if (k < 1 || k + 2 >= n) {
      throw ValidationError("set_threshold: label at t=" + std::to_string(event.t) +
                            " out of trace range (needs 1 sample before and 2 after)");
    }
    const double press_mean = (series.values[k - 1] + series.values[k] + series.values[k + 1] +
                               series.values[k + 2]) /
                              4.0;
    sum += press_mean;
  }
  Threshold threshold;
  threshold.trained_on = labels.events.size();
  threshold.value = sum / static_cast<double>(labels.events.size());
  if (!(threshold.value > 0.0)) {
    throw ValidationError("set_threshold: trained threshold is not positive");
  }
  return threshold;
}

DetectionResult detect_keypresses(const SensorTrace& trace, const Threshold& threshold) {
  const ptrdiff_t n = static_cast<ptrdiff_t>(trace.samples.size());
  if (n < kKeystrokeSamples) {
    throw ValidationError("detect_keypresses: trace shorter than " +
                          std::to_string(kKeystrokeSamples) + " samples");
  }
  if (!(threshold.value > 0.0)) throw ValidationError("detect_keypresses: non-positive threshold");

  const EnergySeries series = energy(trace);
  DetectionResult result;
  ptrdiff_t i = 0;
  while (i < n) {
    if (series.values[i] >= threshold.value) {
      const ptrdiff_t begin = i - kDetectIndex;
      const ptrdiff_t end = begin + kKeystrokeSamples;  // exclusive
      if (begin < 0 || end > n) {
        ++result.edge_skipped;
      } else {
        KeystrokeRecord record;
        record.samples.assign(trace.samples.begin() + begin, trace.samples.begin() + end);
        record.detect_index = kDetectIndex;
        record.device = trace.device;
        record.has_gyro = trace.has_gyro;
        result.records.push_back(std::move(record));
      }
      i += kKeystrokeSamples - kDetectIndex;  // resume at i+15
    } else {
      ++i;
    }
  }
  return result;
}

void label_records(std::vector<KeystrokeRecord>& records, const LabelStream& labels,
                   int64_t max_gap_ms) {
  std::vector<bool> used(labels.events.size(), false);
  for (auto& record : records) {
    const int64_t t = record.detect_t();
    ptrdiff_t best = -1;
    int64_t best_gap = max_gap_ms + 1;
    for (size_t j = 0; j < labels.events.size(); ++j) {
      if (used[j]) continue;
      const int64_t gap = std::abs(labels.events[j].t - t);
      if (gap < best_gap) {
        best_gap = gap;
        best = static_cast<ptrdiff_t>(j);
      }
    }
    if (best >= 0) {
      record.label = labels.events[best].key;
      used[best] = true;
    }
  }
}

}  // namespace wristleak
