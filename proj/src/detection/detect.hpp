#pragma once

#include <cstdint>
#include <vector>

#include "core/types.hpp"
#include "detection/energy.hpp"

namespace wristleak {

struct Threshold {
  double value = 0.0;     // m/s^2, must be > 0
  size_t trained_on = 0;  // number of labeled presses it was averaged over
};

// Trains the detection threshold from a labeled trace: for every labeled
// press, average the four energies at sample indices k-1..k+2, where k is the
// greatest index whose timestamp is <= the label time; the threshold is the
// mean of those per-press averages.
Threshold set_threshold(const SensorTrace& trace, const LabelStream& labels);

struct DetectionResult {
  std::vector<KeystrokeRecord> records;
  size_t edge_skipped = 0;  // threshold crossings too close to a trace edge
};

// Scans energies in order; a crossing at index i emits the record spanning
// samples i-3..i+14 and scanning resumes at i+15 so one press is never
// recorded twice. Crossings whose window would run past a trace edge are
// tallied instead of zero-padded, and consume the same skip distance.
DetectionResult detect_keypresses(const SensorTrace& trace, const Threshold& threshold);

// Attaches ground-truth labels to detected records for training: each record
// takes the nearest unused label within max_gap_ms of its detect sample.
// Records with no label in range stay unlabeled.
void label_records(std::vector<KeystrokeRecord>& records, const LabelStream& labels,
                   int64_t max_gap_ms = 200);

}  // namespace wristleak
