#pragma once

#include <string>
#include <vector>

#include "core/error.hpp"

namespace wristleak {

// How a feature responds when every input sample is multiplied by s > 0.
// Used by the scaling-covariance property tests.
enum class Covariance : uint8_t {
  Linear,     // value scales by s
  Quadratic,  // value scales by s^2
  Invariant,  // value unchanged (positions, counts, shape ratios)
};

struct FeatureSchema {
  std::string id;
  std::vector<std::string> feature_names;
  std::vector<Covariance> covariance;  // parallel to feature_names

  size_t dimension() const { return feature_names.size(); }

  // Published JSON form: {"id":..., "dimension":..., "feature_names":[...]}.
  std::string to_json() const;
};

inline constexpr const char* kSchemaWatchAccel = "watch-accel-155";
inline constexpr const char* kSchemaGyro = "gyro-59";
inline constexpr const char* kSchemaTransition = "transition-freq";
inline constexpr const char* kSchemaFused = "fused-310";
inline constexpr const char* kSchemaAccelGyro = "accel+gyro-214";

// FFT analysis windows (power-of-two, magnitude spectrum only).
inline constexpr size_t kKeystrokeFftSize = 32;
inline constexpr size_t kTransitionFftSize = 64;

const FeatureSchema& schema(const std::string& id);
std::vector<std::string> schema_ids();

}  // namespace wristleak
