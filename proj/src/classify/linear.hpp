#pragma once

#include <cstdint>
#include <vector>

namespace wristleak {

// Dense training view shared by all members: rows are standardized feature
// vectors, labels are class indices into the model's ordered class list.
struct TrainView {
  const std::vector<std::vector<double>>& rows;
  const std::vector<int>& labels;
  int class_count;
};

// One-vs-rest least-squares scorer: per class, a ridge regression onto +/-1
// targets; prediction is the argmax score. Ties go to the lower class index.
class LeastSquaresScorer {
 public:
  void fit(const TrainView& data, double ridge_lambda);
  int predict(const std::vector<double>& x) const;

  const std::vector<std::vector<double>>& weights() const { return weights_; }
  void set_weights(std::vector<std::vector<double>> w) { weights_ = std::move(w); }

 private:
  std::vector<std::vector<double>> weights_;  // per class, d+1 with bias last
};

// One-vs-rest linear SVM trained by a Pegasos-style hinge subgradient descent
// with a fixed epoch budget; deterministic given the seed.
class LinearSvm {
 public:
  void fit(const TrainView& data, double lambda, int epochs, uint64_t seed);
  int predict(const std::vector<double>& x) const;

  const std::vector<std::vector<double>>& weights() const { return weights_; }
  void set_weights(std::vector<std::vector<double>> w) { weights_ = std::move(w); }

 private:
  std::vector<std::vector<double>> weights_;  // per class, d+1 with bias last
};

}  // namespace wristleak
