#pragma once

#include <cstdint>
#include <vector>

#include "classify/tree.hpp"

namespace wristleak {

// Bootstrap-aggregated trees; with mtry = sqrt(d) this is a random forest,
// with mtry = 0 (all features) plain bagged decision trees. Trees are built
// in parallel with per-tree seeds, so results do not depend on scheduling.
class Forest {
 public:
  void fit(const TrainView& data, int tree_count, int mtry, uint64_t seed);

  // Majority vote over trees; ties go to the lower class index.
  int predict(const std::vector<double>& x) const;

  const std::vector<DecisionTree>& trees() const { return trees_; }
  void restore(std::vector<DecisionTree> trees, int class_count);

 private:
  std::vector<DecisionTree> trees_;
  int class_count_ = 0;
};

}  // namespace wristleak
