#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "core/layout.hpp"
#include "core/types.hpp"

namespace wristleak {

enum class Scenario : uint8_t { SH, DH };

// Base waveform of one transition direction: a sinusoid at freq_hz split
// across the axes by weights.
struct DirectionSignature {
  double freq_hz = 5.0;
  double amp = 5.0;
  std::array<double, 3> weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
};

// The generator exists to exercise pipelines and invariants at desk scale;
// waveform realism is explicitly not a goal.
struct SynthConfig {
  std::string layout_name = "numeric";
  double rate_hz = 50.0;
  Scenario scenario = Scenario::SH;
  Device device = Device::Watch;
  double noise_sigma = 0.0;  // m/s^2, per axis per sample
  uint64_t seed = 0;

  // SH (spike) scenario.
  double spike_amplitude = 10.0;   // peak energy of a press
  double min_spacing_ms = 400.0;   // onset spacing floor, must stay >= 350
  double spacing_jitter_ms = 150.0;

  // DH (transition) scenario.
  double min_duration_ms = 200.0;
  double max_duration_ms = 2000.0;
  std::map<Direction, DirectionSignature> signatures;  // defaults filled in

  const KeypadLayout& layout() const;

  static SynthConfig from_json(const std::string& text);
  std::string to_json() const;
};

// Built-in per-direction signatures: distinct frequencies 3..19 Hz with a
// compass-flavored axis split.
std::map<Direction, DirectionSignature> default_signatures();

// One damped spike per key over Gaussian noise; the per-axis amplitude split
// is a function of the key's grid position, so distinct keys produce distinct
// records. Labels sit at spike onsets. At zero noise the maximum energy
// sample of a press equals spike_amplitude exactly.
std::pair<SensorTrace, LabelStream> generate_sh(const SynthConfig& config,
                                                const std::string& keys);

// One direction-signature segment per consecutive key pair, no spike at the
// presses; labels sit at the segment boundaries (every key press).
std::pair<SensorTrace, LabelStream> generate_dh(const SynthConfig& config,
                                                const std::string& keys);

}  // namespace wristleak
