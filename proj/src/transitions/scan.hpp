#pragma once

#include <cstddef>
#include <vector>

#include "classify/ensemble.hpp"
#include "core/layout.hpp"
#include "transitions/tracing.hpp"

namespace wristleak {

struct ScanConfig {
  size_t min_window = 10;   // samples (200 ms at 50 Hz)
  size_t max_window = 100;  // samples (2 s at 50 Hz)
  size_t min_run = 10;      // consecutive agreeing window starts
};

struct ScannedTransition {
  Direction direction;
  size_t boundary_index;  // centroid of the agreeing run, floor of the mean
};

struct ScanResult {
  std::vector<ScannedTransition> transitions;

  DirectionSequence directions() const {
    DirectionSequence dirs;
    dirs.reserve(transitions.size());
    for (const auto& t : transitions) dirs.emplace_back(t.direction);
    return dirs;
  }
};

// Moving-window transition detection: at every start index the windows of all
// admissible lengths are classified and the per-start direction is their
// majority; a run of min_run or more consecutive starts agreeing on one
// direction is recorded as a transition. The model must be trained on the
// transition-freq schema.
ScanResult scan_transitions(const SensorTrace& trace, const TrainedModel& model,
                            const ScanConfig& config = {});

// Cuts a labeled trace into direction-labeled transition records, one per
// consecutive label pair; samples are taken from the half-open interval
// between the two press times.
std::vector<TransitionRecord> segment_transitions(const SensorTrace& trace,
                                                  const LabelStream& labels,
                                                  const KeypadLayout& layout = numeric_layout());

}  // namespace wristleak
