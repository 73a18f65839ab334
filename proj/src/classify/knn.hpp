#pragma once

#include <vector>

#include "classify/linear.hpp"

namespace wristleak {

// k-nearest-neighbors over standardized features, Euclidean distance.
// Neighbor ranking ties break on the lower training index; vote ties break on
// the lower class index.
class KnnClassifier {
 public:
  void fit(const TrainView& data, int k);
  int predict(const std::vector<double>& x) const;

  int k() const { return k_; }
  const std::vector<std::vector<double>>& points() const { return points_; }
  const std::vector<int>& labels() const { return labels_; }
  void restore(int k, std::vector<std::vector<double>> points, std::vector<int> labels,
               int class_count);

 private:
  int k_ = 5;
  int class_count_ = 0;
  std::vector<std::vector<double>> points_;
  std::vector<int> labels_;
};

}  // namespace wristleak
