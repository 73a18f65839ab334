#include "core/trace_io.hpp"

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

json parse_line(const std::string& line, size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    fail_line(line_no, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

SensorTrace parse_trace(std::istream& in, std::optional<Device> expected_device) {
  std::string line;
  size_t line_no = 0;

  // Header.
  if (!std::getline(in, line)) throw ValidationError("empty trace file (missing meta header)");
  ++line_no;
  const json header = parse_line(line, line_no);
  if (!header.contains("meta") || !header["meta"].is_object()) {
    fail_line(line_no, "first line must be the {\"meta\":{...}} header");
  }
  const json& meta = header["meta"];
  SensorTrace trace;
  trace.nominal_rate_hz = number_field(meta, "rate_hz", line_no);
  if (trace.nominal_rate_hz <= 0.0) fail_line(line_no, "rate_hz must be positive");
  if (!meta.contains("device") || !meta["device"].is_string()) {
    fail_line(line_no, "meta.device must be \"watch\" or \"phone\"");
  }
  trace.device = device_from_name(meta["device"].get<std::string>());
  if (expected_device && trace.device != *expected_device) {
    fail_line(line_no, std::string("trace device is ") + device_name(trace.device) +
                           ", expected " + device_name(*expected_device));
  }

  bool arity_known = false;
  int64_t prev_t = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json obj = parse_line(line, line_no);
    if (!obj.is_object()) fail_line(line_no, "sample line is not a JSON object");

    SensorSample s;
    const double t_raw = number_field(obj, "t", line_no);
    if (t_raw < 0) fail_line(line_no, "negative timestamp");
    s.t = std::llround(t_raw);
    s.ax = number_field(obj, "ax", line_no);
    s.ay = number_field(obj, "ay", line_no);
    s.az = number_field(obj, "az", line_no);

    const bool has_gyro = obj.contains("gx") || obj.contains("gy") || obj.contains("gz");
    if (has_gyro) {
      s.gx = number_field(obj, "gx", line_no);
      s.gy = number_field(obj, "gy", line_no);
      s.gz = number_field(obj, "gz", line_no);
    }
    if (!arity_known) {
      trace.has_gyro = has_gyro;
      arity_known = true;
    } else if (has_gyro != trace.has_gyro) {
      fail_line(line_no, "mixed channel arity (trace must be all 3-axis or all 6-axis)");
    }

    if (s.t <= prev_t) fail_line(line_no, "timestamps not strictly increasing");
    prev_t = s.t;
    trace.samples.push_back(s);
  }
  return trace;
}

SensorTrace parse_trace_file(const std::string& path, std::optional<Device> expected_device) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open trace file '" + path + "'");
  try {
    return parse_trace(in, expected_device);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string serialize_trace(const SensorTrace& trace) {
  std::ostringstream out;
  json meta;
  meta["meta"]["rate_hz"] = trace.nominal_rate_hz;
  meta["meta"]["device"] = device_name(trace.device);
  out << meta.dump() << '\n';
  for (const auto& s : trace.samples) {
    json obj;
    obj["t"] = s.t;
    obj["ax"] = s.ax;
    obj["ay"] = s.ay;
    obj["az"] = s.az;
    if (trace.has_gyro) {
      obj["gx"] = s.gx;
      obj["gy"] = s.gy;
      obj["gz"] = s.gz;
    }
    out << obj.dump() << '\n';
  }
  return out.str();
}

void write_trace_file(const SensorTrace& trace, const std::string& path) {
  atomic_write_file(path, serialize_trace(trace));
}

LabelStream parse_labels(std::istream& in) {
  LabelStream labels;
  std::string line;
  size_t line_no = 0;
  int64_t prev_t = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json obj = parse_line(line, line_no);
    if (!obj.is_object()) fail_line(line_no, "label line is not a JSON object");
    LabelEvent e;
    const double t_raw = number_field(obj, "t", line_no);
    if (t_raw < 0) fail_line(line_no, "negative timestamp");
    e.t = std::llround(t_raw);
    auto it = obj.find("key");
    if (it == obj.end() || !it->is_string() || it->get<std::string>().size() != 1) {
      fail_line(line_no, "field 'key' must be a single-symbol string");
    }
    e.key = it->get<std::string>()[0];
    if (e.t <= prev_t) fail_line(line_no, "timestamps not strictly increasing");
    prev_t = e.t;
    labels.events.push_back(e);
  }
  return labels;
}

LabelStream parse_labels_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open label file '" + path + "'");
  try {
    return parse_labels(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string serialize_labels(const LabelStream& labels) {
  std::ostringstream out;
  for (const auto& e : labels.events) {
    json obj;
    obj["t"] = e.t;
    obj["key"] = std::string(1, e.key);
    out << obj.dump() << '\n';
  }
  return out.str();
}

void write_labels_file(const LabelStream& labels, const std::string& path) {
  atomic_write_file(path, serialize_labels(labels));
}

}  // namespace wristleak
