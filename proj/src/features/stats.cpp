#include "features/stats.hpp"

#include <algorithm>
#include <cmath>

namespace wristleak {

namespace {

double central_moment(const std::vector<double>& v, double mu, int order) {
  double acc = 0.0;
  for (double x : v) acc += std::pow(x - mu, order);
  return acc / static_cast<double>(v.size());
}

}  // namespace

double mean_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double variance_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : central_moment(v, mean_of(v), 2);
}

double skewness_of(const std::vector<double>& v) {
  const double mu = mean_of(v);
  const double m2 = central_moment(v, mu, 2);
  if (m2 == 0.0) return 0.0;
  return central_moment(v, mu, 3) / std::pow(m2, 1.5);
}

double kurtosis_of(const std::vector<double>& v) {
  const double mu = mean_of(v);
  const double m2 = central_moment(v, mu, 2);
  if (m2 == 0.0) return 0.0;
  return central_moment(v, mu, 4) / (m2 * m2);
}

}  // namespace wristleak
