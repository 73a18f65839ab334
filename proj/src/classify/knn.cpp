#include "classify/knn.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace wristleak {

void KnnClassifier::fit(const TrainView& data, int k) {
  k_ = std::max(1, std::min<int>(k, static_cast<int>(data.rows.size())));
  class_count_ = data.class_count;
  points_ = data.rows;
  labels_ = data.labels;
}

void KnnClassifier::restore(int k, std::vector<std::vector<double>> points,
                            std::vector<int> labels, int class_count) {
  k_ = k;
  points_ = std::move(points);
  labels_ = std::move(labels);
  class_count_ = class_count;
}

int KnnClassifier::predict(const std::vector<double>& x) const {
  if (points_.empty()) throw InconsistencyError("knn: not fitted");
  std::vector<std::pair<double, size_t>> dist;
  dist.reserve(points_.size());
  for (size_t i = 0; i < points_.size(); ++i) {
    double d2 = 0.0;
    for (size_t j = 0; j < x.size(); ++j) {
      const double c = points_[i][j] - x[j];
      d2 += c * c;
    }
    dist.emplace_back(d2, i);
  }
  const size_t k = static_cast<size_t>(k_);
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

  std::vector<int> votes(static_cast<size_t>(class_count_), 0);
  for (size_t i = 0; i < k; ++i) ++votes[static_cast<size_t>(labels_[dist[i].second])];
  int best = 0;
  for (int c = 1; c < class_count_; ++c) {
    if (votes[static_cast<size_t>(c)] > votes[static_cast<size_t>(best)]) best = c;
  }
  return best;
}

}  // namespace wristleak
