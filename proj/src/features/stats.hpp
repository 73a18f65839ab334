#pragma once

#include <cstddef>
#include <vector>

namespace wristleak {

double mean_of(const std::vector<double>& v);
double median_of(std::vector<double> v);  // by value: sorts a copy

// Population moments. Skewness and kurtosis of a zero-variance input are
// defined as 0 so every feature vector stays finite.
double variance_of(const std::vector<double>& v);
double skewness_of(const std::vector<double>& v);
double kurtosis_of(const std::vector<double>& v);

}  // namespace wristleak
