#include "features/vector_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/file_util.hpp"

namespace wristleak {

namespace {
using nlohmann::json;
}

std::vector<FeatureVector> parse_vectors(std::istream& in) {
  std::vector<FeatureVector> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": malformed JSON: " + e.what());
    }
    FeatureVector v;
    if (!obj.contains("schema") || !obj["schema"].is_string()) {
      throw ValidationError("line " + std::to_string(line_no) + ": missing 'schema'");
    }
    v.schema_id = obj["schema"].get<std::string>();
    const FeatureSchema& s = schema(v.schema_id);
    if (!obj.contains("values") || !obj["values"].is_array()) {
      throw ValidationError("line " + std::to_string(line_no) + ": missing 'values'");
    }
    v.values.reserve(obj["values"].size());
    for (const auto& x : obj["values"]) {
      if (!x.is_number() || !std::isfinite(x.get<double>())) {
        throw ValidationError("line " + std::to_string(line_no) + ": non-finite value");
      }
      v.values.push_back(x.get<double>());
    }
    if (v.values.size() != s.dimension()) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(s.dimension()) + " values for schema " + v.schema_id);
    }
    if (obj.contains("label")) v.label = obj["label"].get<std::string>();
    if (obj.contains("subject")) v.subject = obj["subject"].get<std::string>();
    if (!out.empty() && out.front().schema_id != v.schema_id) {
      throw ValidationError("line " + std::to_string(line_no) + ": mixed schemas in one file");
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<FeatureVector> parse_vectors_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open vector file '" + path + "'");
  try {
    return parse_vectors(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string serialize_vectors(const std::vector<FeatureVector>& vectors) {
  std::ostringstream out;
  for (const auto& v : vectors) {
    json obj;
    obj["schema"] = v.schema_id;
    if (v.label) obj["label"] = *v.label;
    if (v.subject) obj["subject"] = *v.subject;
    obj["values"] = v.values;
    out << obj.dump() << '\n';
  }
  return out.str();
}

void write_vectors_file(const std::vector<FeatureVector>& vectors, const std::string& path) {
  atomic_write_file(path, serialize_vectors(vectors));
}

}  // namespace wristleak
