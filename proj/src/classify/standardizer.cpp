#include "classify/standardizer.hpp"

#include <cmath>

#include "core/error.hpp"

namespace wristleak {

Standardizer Standardizer::fit(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ValidationError("standardizer: empty training set");
  const size_t d = rows.front().size();
  Standardizer s;
  s.mean.assign(d, 0.0);
  s.std_dev.assign(d, 1.0);
  for (const auto& row : rows) {
    for (size_t j = 0; j < d; ++j) s.mean[j] += row[j];
  }
  for (double& m : s.mean) m /= static_cast<double>(rows.size());
  std::vector<double> var(d, 0.0);
  for (const auto& row : rows) {
    for (size_t j = 0; j < d; ++j) {
      const double c = row[j] - s.mean[j];
      var[j] += c * c;
    }
  }
  for (size_t j = 0; j < d; ++j) {
    const double v = var[j] / static_cast<double>(rows.size());
    if (v > 0.0) s.std_dev[j] = std::sqrt(v);
  }
  return s;
}

std::vector<double> Standardizer::transform(const std::vector<double>& row) const {
  if (row.size() != mean.size()) throw ValidationError("standardizer: dimension mismatch");
  std::vector<double> out(row.size());
  for (size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - mean[j]) / std_dev[j];
  return out;
}

}  // namespace wristleak
