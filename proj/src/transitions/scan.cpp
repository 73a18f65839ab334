#include "transitions/scan.hpp"

#include <algorithm>

namespace wristleak {

ScanResult scan_transitions(const SensorTrace& trace, const TrainedModel& model,
                            const ScanConfig& config) {
  if (model.schema_id() != kSchemaTransition) {
    throw ValidationError("scan_transitions: model must be trained on schema " +
                          std::string(kSchemaTransition));
  }
  const size_t n = trace.samples.size();
  if (n < config.min_window) {
    throw ValidationError("scan_transitions: trace shorter than the minimum window (" +
                          std::to_string(config.min_window) + " samples)");
  }

  // Majority direction per window start, over all admissible window lengths.
  const size_t start_count = n - config.min_window + 1;
  std::vector<int> per_start(start_count, -1);
  for (size_t i = 0; i < start_count; ++i) {
    int votes[kDirectionCount] = {};
    const size_t max_len = std::min(config.max_window, n - i);
    for (size_t len = config.min_window; len <= max_len; ++len) {
      TransitionRecord window;
      window.samples.assign(trace.samples.begin() + static_cast<ptrdiff_t>(i),
                            trace.samples.begin() + static_cast<ptrdiff_t>(i + len));
      window.start_t = window.samples.front().t;
      window.end_t = window.samples.back().t + 1;
      const Prediction p = model.predict(transition_features(window));
      ++votes[static_cast<size_t>(direction_from_name(p.label))];
    }
    int best = 0;
    for (int d = 1; d < kDirectionCount; ++d) {
      if (votes[d] > votes[best]) best = d;
    }
    per_start[i] = best;
  }

  // Runs of agreeing starts; the run centroid marks the key-press boundary.
  ScanResult result;
  size_t run_begin = 0;
  for (size_t i = 1; i <= start_count; ++i) {
    if (i == start_count || per_start[i] != per_start[run_begin]) {
      const size_t run_len = i - run_begin;
      if (run_len >= config.min_run) {
        ScannedTransition t;
        t.direction = static_cast<Direction>(per_start[run_begin]);
        t.boundary_index = (run_begin + (i - 1)) / 2;
        result.transitions.push_back(t);
      }
      run_begin = i;
    }
  }
  return result;
}

std::vector<TransitionRecord> segment_transitions(const SensorTrace& trace,
                                                  const LabelStream& labels,
                                                  const KeypadLayout& layout) {
  std::vector<TransitionRecord> records;
  if (labels.events.size() < 2) return records;
  size_t cursor = 0;
  for (size_t j = 0; j + 1 < labels.events.size(); ++j) {
    const int64_t t0 = labels.events[j].t;
    const int64_t t1 = labels.events[j + 1].t;
    while (cursor < trace.samples.size() && trace.samples[cursor].t < t0) ++cursor;
    size_t end = cursor;
    while (end < trace.samples.size() && trace.samples[end].t < t1) ++end;
    if (end > cursor) {
      TransitionRecord r;
      r.samples.assign(trace.samples.begin() + static_cast<ptrdiff_t>(cursor),
                       trace.samples.begin() + static_cast<ptrdiff_t>(end));
      r.start_t = t0;
      r.end_t = t1;
      r.label = direction_of(labels.events[j].key, labels.events[j + 1].key, layout);
      records.push_back(std::move(r));
    }
    cursor = end;
  }
  return records;
}

}  // namespace wristleak
