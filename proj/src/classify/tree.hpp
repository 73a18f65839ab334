#pragma once

#include <cstdint>
#include <vector>

#include "classify/linear.hpp"

namespace wristleak {

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int leaf_class = -1;
};

class DecisionTree {
 public:
  int predict(const std::vector<double>& x) const;
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  void restore(std::vector<TreeNode> nodes) { nodes_ = std::move(nodes); }

 private:
  friend DecisionTree train_tree(const TrainView&, int, bool, uint64_t);
  std::vector<TreeNode> nodes_;
};

// CART with exact Gini splits, grown unpruned until nodes are pure or too
// small. mtry <= 0 means all features. Split search runs on per-feature
// presorted index arrays that are stably partitioned at each node, so no
// per-node sorting is needed. Deterministic given the seed.
DecisionTree train_tree(const TrainView& data, int mtry, bool bootstrap, uint64_t seed);

}  // namespace wristleak
