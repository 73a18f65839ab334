#include "features/schema.hpp"

#include <array>
#include <map>

#include <json.hpp>

namespace wristleak {

namespace {

constexpr std::array<const char*, 3> kAxes = {"x", "y", "z"};

struct Builder {
  FeatureSchema s;
  void add(const std::string& name, Covariance c) {
    s.feature_names.push_back(name);
    s.covariance.push_back(c);
  }
};

// 47 per-axis + 11 inter-axis + 3 spectral = 155.
FeatureSchema build_accel155() {
  Builder b;
  b.s.id = kSchemaWatchAccel;
  for (const char* a : kAxes) {
    const std::string ax = a;
    b.add(ax + "_min_mag", Covariance::Linear);
    b.add(ax + "_max_mag", Covariance::Linear);
    b.add(ax + "_sqsum_low33", Covariance::Quadratic);
    b.add(ax + "_sqsum_high67", Covariance::Quadratic);
    b.add(ax + "_argmax", Covariance::Invariant);
    b.add(ax + "_argmin", Covariance::Invariant);
    b.add(ax + "_mean", Covariance::Linear);
    b.add(ax + "_median", Covariance::Linear);
    b.add(ax + "_variance", Covariance::Quadratic);
    b.add(ax + "_stddev", Covariance::Linear);
    b.add(ax + "_skewness", Covariance::Invariant);
    b.add(ax + "_kurtosis", Covariance::Invariant);
    for (int i = 0; i < 18; ++i) b.add(ax + "_raw_" + std::to_string(i), Covariance::Linear);
    for (int i = 0; i < 17; ++i) b.add(ax + "_diff_" + std::to_string(i), Covariance::Linear);
  }
  b.add("global_min_mag", Covariance::Linear);
  b.add("global_max_mag", Covariance::Linear);
  b.add("frobenius_norm", Covariance::Linear);
  b.add("infinity_norm", Covariance::Linear);
  b.add("one_norm", Covariance::Linear);
  b.add("spectral_norm", Covariance::Linear);
  // Per-sample dominant/weakest axis tallies; the third argmin count is
  // omitted because the three counts always sum to the record length.
  for (const char* a : kAxes) b.add(std::string("argmax_count_") + a, Covariance::Invariant);
  b.add("argmin_count_x", Covariance::Invariant);
  b.add("argmin_count_y", Covariance::Invariant);
  for (const char* a : kAxes) b.add(std::string("fft_dom_mag_") + a, Covariance::Linear);
  return b.s;
}

// 19 per-axis + 2 global = 59.
FeatureSchema build_gyro59() {
  Builder b;
  b.s.id = kSchemaGyro;
  for (const char* a : kAxes) {
    const std::string ax = std::string("g") + a;
    b.add(ax + "_min", Covariance::Linear);
    b.add(ax + "_max", Covariance::Linear);
    b.add(ax + "_mean", Covariance::Linear);
    b.add(ax + "_variance", Covariance::Quadratic);
    b.add(ax + "_skewness", Covariance::Invariant);
    b.add(ax + "_kurtosis", Covariance::Invariant);
    b.add(ax + "_spike_count", Covariance::Invariant);
    b.add(ax + "_peak_interval", Covariance::Invariant);
    b.add(ax + "_attenuation", Covariance::Invariant);
    b.add(ax + "_vertex_angle", Covariance::Invariant);
    for (int k = 0; k < 9; ++k) b.add(ax + "_fft_" + std::to_string(k), Covariance::Linear);
  }
  b.add("g_global_min", Covariance::Linear);
  b.add("g_global_max", Covariance::Linear);
  return b.s;
}

// 45 per-axis + 3 inter-axis spectrum correlations = 138. Transition records
// vary in duration, so every feature is computed on a fixed 64-sample
// zero-padded/truncated spectral window and the dimension never changes.
FeatureSchema build_transition() {
  Builder b;
  b.s.id = kSchemaTransition;
  for (const char* a : kAxes) {
    const std::string ax = a;
    for (int k = 0; k <= 32; ++k) b.add(ax + "_spec_" + std::to_string(k), Covariance::Linear);
    b.add(ax + "_spec_mean", Covariance::Linear);
    b.add(ax + "_rolloff85", Covariance::Invariant);
    b.add(ax + "_centroid", Covariance::Invariant);
    b.add(ax + "_flux", Covariance::Linear);
    for (int k = 0; k < 8; ++k) b.add(ax + "_psd_" + std::to_string(k), Covariance::Quadratic);
  }
  b.add("spec_corr_xy", Covariance::Invariant);
  b.add("spec_corr_xz", Covariance::Invariant);
  b.add("spec_corr_yz", Covariance::Invariant);
  return b.s;
}

FeatureSchema concat(const char* id, const char* prefix_a, const FeatureSchema& a,
                     const char* prefix_b, const FeatureSchema& other) {
  Builder b;
  b.s.id = id;
  for (size_t i = 0; i < a.dimension(); ++i) b.add(prefix_a + a.feature_names[i], a.covariance[i]);
  for (size_t i = 0; i < other.dimension(); ++i) {
    b.add(prefix_b + other.feature_names[i], other.covariance[i]);
  }
  return b.s;
}

const std::map<std::string, FeatureSchema>& registry() {
  static const std::map<std::string, FeatureSchema> reg = [] {
    std::map<std::string, FeatureSchema> m;
    const FeatureSchema accel = build_accel155();
    const FeatureSchema gyro = build_gyro59();
    m[kSchemaWatchAccel] = accel;
    m[kSchemaGyro] = gyro;
    m[kSchemaTransition] = build_transition();
    m[kSchemaFused] = concat(kSchemaFused, "watch_", accel, "phone_", accel);
    m[kSchemaAccelGyro] = concat(kSchemaAccelGyro, "", accel, "", gyro);
    return m;
  }();
  return reg;
}

}  // namespace

std::string FeatureSchema::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["dimension"] = dimension();
  j["feature_names"] = feature_names;
  return j.dump(2) + "\n";
}

const FeatureSchema& schema(const std::string& id) {
  const auto& reg = registry();
  auto it = reg.find(id);
  if (it == reg.end()) throw ValidationError("unknown feature schema '" + id + "'");
  return it->second;
}

std::vector<std::string> schema_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, _] : registry()) ids.push_back(id);
  return ids;
}

}  // namespace wristleak
