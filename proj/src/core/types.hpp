#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace wristleak {

enum class Device : uint8_t { Watch, Phone };

const char* device_name(Device d);
Device device_from_name(const std::string& name);

// One motion sample. Gyro channels are meaningful only when the owning trace
// or record reports has_gyro.
struct SensorSample {
  int64_t t = 0;  // milliseconds since trace start
  double ax = 0.0, ay = 0.0, az = 0.0;
  double gx = 0.0, gy = 0.0, gz = 0.0;
};

struct SensorTrace {
  std::vector<SensorSample> samples;
  double nominal_rate_hz = 0.0;
  Device device = Device::Watch;
  bool has_gyro = false;

  // Throws ValidationError on non-finite values, non-positive rate, or
  // timestamps that are not strictly increasing.
  void validate() const;
};

struct LabelEvent {
  int64_t t = 0;
  char key = 0;
};

// Ground-truth key presses; used for training and scoring only.
struct LabelStream {
  std::vector<LabelEvent> events;
  void validate() const;
};

// The nine transition direction classes. O is a repeated key.
enum class Direction : uint8_t { N, S, E, W, NE, NW, SE, SW, O };

inline constexpr int kDirectionCount = 9;

const char* direction_name(Direction d);
Direction direction_from_name(const std::string& name);
Direction opposite(Direction d);

inline constexpr int kKeystrokeSamples = 18;
inline constexpr int kDetectIndex = 3;

// Fixed-width window around one detected key press: the threshold-crossing
// sample sits at detect_index, preceded by three samples and followed by
// fourteen.
struct KeystrokeRecord {
  std::vector<SensorSample> samples;  // exactly kKeystrokeSamples
  int detect_index = kDetectIndex;
  std::optional<char> label;
  Device device = Device::Watch;
  bool has_gyro = false;

  int64_t start_t() const { return samples.empty() ? 0 : samples.front().t; }
  int64_t detect_t() const {
    return samples.empty() ? 0 : samples[static_cast<size_t>(detect_index)].t;
  }
};

// Variable-length window between two consecutive key presses.
struct TransitionRecord {
  std::vector<SensorSample> samples;  // length >= 1
  std::optional<Direction> label;
  int64_t start_t = 0;
  int64_t end_t = 0;
};

}  // namespace wristleak
