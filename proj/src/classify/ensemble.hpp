#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "classify/forest.hpp"
#include "classify/knn.hpp"
#include "classify/linear.hpp"
#include "classify/standardizer.hpp"
#include "features/features.hpp"

namespace wristleak {

// Member order used everywhere votes are reported.
inline constexpr std::array<const char*, 5> kMemberNames = {"slr", "rf", "knn", "svm", "bdt"};

struct TrainConfig {
  uint64_t seed = 0;
  int knn_k = 5;
  int rf_trees = 100;
  int bdt_trees = 50;
  int svm_epochs = 10;
  double svm_lambda = 1e-4;
  double slr_lambda = 1e-6;

  static TrainConfig from_json(const std::string& text);
  std::string to_json() const;
};

struct Prediction {
  std::string label;
  std::map<std::string, std::string> votes;  // member name -> voted label
  bool tie_broken = false;
};

// Majority of the five member votes (by kMemberNames order). Vote ties are
// broken by member priority rf > bdt > svm > knn > slr: the highest-priority
// member whose vote belongs to the tied label set wins.
std::pair<std::string, bool> majority_vote(const std::array<std::string, 5>& member_votes);

// The five-member ensemble: one-vs-rest least-squares scorer, random forest,
// k-NN, one-vs-rest linear SVM, and bagged decision trees, fitted on
// z-scored features and combined by majority vote.
class TrainedModel {
 public:
  static TrainedModel fit(const std::vector<FeatureVector>& train, const TrainConfig& config);

  Prediction predict(const FeatureVector& x) const;

  const std::vector<std::string>& classes() const { return classes_; }
  const std::string& schema_id() const { return schema_id_; }
  const Standardizer& standardizer() const { return standardizer_; }
  const TrainConfig& config() const { return config_; }

  std::string to_json() const;
  static TrainedModel from_json(const std::string& text);

  void save(const std::string& path) const;
  static TrainedModel load(const std::string& path);

 private:
  std::string schema_id_;
  std::vector<std::string> classes_;
  Standardizer standardizer_;
  TrainConfig config_;

  LeastSquaresScorer slr_;
  Forest rf_;
  KnnClassifier knn_;
  LinearSvm svm_;
  Forest bdt_;
};

}  // namespace wristleak
