#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/types.hpp"
#include "features/schema.hpp"

namespace wristleak {

struct FeatureVector {
  std::vector<double> values;
  std::string schema_id;
  std::optional<std::string> label;
  std::optional<std::string> subject;
};

// 155-dimension accelerometer vector (schema watch-accel-155).
FeatureVector keystroke_features(const KeystrokeRecord& record);

// 59-dimension gyroscope vector (schema gyro-59); record must carry gyro
// channels.
FeatureVector gyro_features(const KeystrokeRecord& record);

// Fixed-dimension spectral vector for variable-length transition windows
// (schema transition-freq). Record must have at least 4 samples.
FeatureVector transition_features(const TransitionRecord& record);

// Concatenation, watch first; both inputs must be watch-accel-155.
FeatureVector fuse(const FeatureVector& watch, const FeatureVector& phone);

// Concatenation, accelerometer first: watch-accel-155 + gyro-59.
FeatureVector combine_accel_gyro(const FeatureVector& accel, const FeatureVector& gyro);

}  // namespace wristleak
