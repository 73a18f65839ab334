#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "features/features.hpp"

namespace wristleak {

// Vector files are JSON lines:
//   {"schema":"watch-accel-155","label":"7","subject":"s01","values":[...]}
// label and subject are optional. All vectors in one file must share a schema.
std::vector<FeatureVector> parse_vectors(std::istream& in);
std::vector<FeatureVector> parse_vectors_file(const std::string& path);

std::string serialize_vectors(const std::vector<FeatureVector>& vectors);
void write_vectors_file(const std::vector<FeatureVector>& vectors, const std::string& path);

}  // namespace wristleak
