#pragma once

#include <vector>

namespace wristleak {

// Per-feature z-scoring fitted on training data only; test vectors are always
// transformed with the stored training statistics.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> std_dev;  // zero-variance features keep std_dev 1

  static Standardizer fit(const std::vector<std::vector<double>>& rows);
  std::vector<double> transform(const std::vector<double>& row) const;
};

}  // namespace wristleak
