#include "core/record_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/file_util.hpp"

namespace wristleak {

namespace {

using nlohmann::json;

[[noreturn]] void fail_line(size_t line_no, const std::string& what) {
  throw ValidationError("line " + std::to_string(line_no) + ": " + what);
}

double number_field(const json& obj, const char* key, size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end()) fail_line(line_no, std::string("missing field '") + key + "'");
  if (!it->is_number()) fail_line(line_no, std::string("field '") + key + "' is not a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) fail_line(line_no, std::string("field '") + key + "' is not finite");
  return v;
}

std::vector<SensorSample> parse_samples(const json& arr, size_t line_no, bool* has_gyro) {
  if (!arr.is_array() || arr.empty()) fail_line(line_no, "'samples' must be a non-empty array");
  std::vector<SensorSample> samples;
  samples.reserve(arr.size());
  *has_gyro = arr[0].contains("gx");
  for (const auto& o : arr) {
    SensorSample s;
    s.t = std::llround(number_field(o, "t", line_no));
    s.ax = number_field(o, "ax", line_no);
    s.ay = number_field(o, "ay", line_no);
    s.az = number_field(o, "az", line_no);
    if (o.contains("gx") != *has_gyro) fail_line(line_no, "mixed channel arity inside record");
    if (*has_gyro) {
      s.gx = number_field(o, "gx", line_no);
      s.gy = number_field(o, "gy", line_no);
      s.gz = number_field(o, "gz", line_no);
    }
    samples.push_back(s);
  }
  return samples;
}

json sample_to_json(const SensorSample& s, bool has_gyro) {
  json o;
  o["t"] = s.t;
  o["ax"] = s.ax;
  o["ay"] = s.ay;
  o["az"] = s.az;
  if (has_gyro) {
    o["gx"] = s.gx;
    o["gy"] = s.gy;
    o["gz"] = s.gz;
  }
  return o;
}

}  // namespace

RecordBundle parse_records(std::istream& in) {
  RecordBundle bundle;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      fail_line(line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) fail_line(line_no, "record line is not a JSON object");
    if (obj.contains("diagnostics")) continue;

    std::string kind;
    if (obj.contains("kind")) {
      kind = obj["kind"].get<std::string>();
    } else if (obj.contains("detect_index")) {
      kind = "keystroke";
    } else if (obj.contains("end_t")) {
      kind = "transition";
    } else {
      fail_line(line_no, "cannot infer record kind");
    }

    bool has_gyro = false;
    if (kind == "keystroke") {
      KeystrokeRecord r;
      r.samples = parse_samples(obj["samples"], line_no, &has_gyro);
      r.has_gyro = has_gyro;
      if (r.samples.size() != kKeystrokeSamples) {
        fail_line(line_no, "keystroke record must have exactly " +
                               std::to_string(kKeystrokeSamples) + " samples");
      }
      r.detect_index =
          obj.contains("detect_index") ? obj["detect_index"].get<int>() : kDetectIndex;
      if (r.detect_index != kDetectIndex) fail_line(line_no, "unexpected detect_index");
      if (obj.contains("device")) r.device = device_from_name(obj["device"].get<std::string>());
      if (obj.contains("label")) {
        const auto s = obj["label"].get<std::string>();
        if (s.size() != 1) fail_line(line_no, "label must be a single symbol");
        r.label = s[0];
      }
      bundle.keystrokes.push_back(std::move(r));
    } else if (kind == "transition") {
      TransitionRecord r;
      r.samples = parse_samples(obj["samples"], line_no, &has_gyro);
      r.start_t = obj.contains("start_t") ? std::llround(number_field(obj, "start_t", line_no))
                                          : r.samples.front().t;
      r.end_t = obj.contains("end_t") ? std::llround(number_field(obj, "end_t", line_no))
                                      : r.samples.back().t;
      if (r.start_t >= r.end_t) fail_line(line_no, "transition record needs start_t < end_t");
      if (obj.contains("label")) r.label = direction_from_name(obj["label"].get<std::string>());
      bundle.transitions.push_back(std::move(r));
    } else {
      fail_line(line_no, "unknown record kind '" + kind + "'");
    }
  }
  return bundle;
}

RecordBundle parse_records_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open record file '" + path + "'");
  try {
    return parse_records(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string serialize_keystroke_records(const std::vector<KeystrokeRecord>& records,
                                        const std::optional<std::string>& diagnostics_json) {
  std::ostringstream out;
  for (const auto& r : records) {
    json obj;
    obj["kind"] = "keystroke";
    obj["start_t"] = r.start_t();
    obj["detect_index"] = r.detect_index;
    obj["device"] = device_name(r.device);
    if (r.label) obj["label"] = std::string(1, *r.label);
    json arr = json::array();
    for (const auto& s : r.samples) arr.push_back(sample_to_json(s, r.has_gyro));
    obj["samples"] = std::move(arr);
    out << obj.dump() << '\n';
  }
  if (diagnostics_json) {
    json obj;
    obj["diagnostics"] = json::parse(*diagnostics_json);
    out << obj.dump() << '\n';
  }
  return out.str();
}

std::string serialize_transition_records(const std::vector<TransitionRecord>& records) {
  std::ostringstream out;
  for (const auto& r : records) {
    json obj;
    obj["kind"] = "transition";
    obj["start_t"] = r.start_t;
    obj["end_t"] = r.end_t;
    if (r.label) obj["label"] = direction_name(*r.label);
    json arr = json::array();
    for (const auto& s : r.samples) arr.push_back(sample_to_json(s, false));
    obj["samples"] = std::move(arr);
    out << obj.dump() << '\n';
  }
  return out.str();
}

void write_keystroke_records_file(const std::vector<KeystrokeRecord>& records,
                                  const std::string& path,
                                  const std::optional<std::string>& diagnostics_json) {
  atomic_write_file(path, serialize_keystroke_records(records, diagnostics_json));
}

void write_transition_records_file(const std::vector<TransitionRecord>& records,
                                   const std::string& path) {
  atomic_write_file(path, serialize_transition_records(records));
}

}  // namespace wristleak
