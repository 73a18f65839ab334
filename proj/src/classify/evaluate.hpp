#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "classify/ensemble.hpp"

namespace wristleak {

enum class Protocol : uint8_t { OneVsOne, OneVsRest, AllVsAll };

const char* protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& name);

struct SplitConfig {
  double train_fraction = 2.0 / 3.0;  // used by OneVsOne and AllVsAll
  uint64_t seed = 0;
  std::optional<std::string> target_subject;  // restrict to one round
};

struct EvalReport {
  Protocol protocol = Protocol::AllVsAll;
  double accuracy = 0.0;
  std::vector<std::string> classes;
  std::vector<std::vector<int64_t>> confusion;  // [true class][predicted]
  std::map<std::string, double> per_class_accuracy;
  int64_t test_total = 0;

  std::string to_json() const;
};

// OneVsOne: per subject, disjoint stratified split within the subject.
// OneVsRest: per subject, train on every other subject, test on the target.
// AllVsAll: pooled stratified split across all subjects.
// Vectors carry their subject tag; untagged vectors all belong to one
// implicit subject. The harness asserts train/test disjointness.
EvalReport evaluate(const std::vector<FeatureVector>& data, Protocol protocol,
                    const SplitConfig& split, const TrainConfig& train_config);

}  // namespace wristleak
