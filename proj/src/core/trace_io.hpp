#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "core/types.hpp"

namespace wristleak {

// Trace files are JSON lines. The first line is a required header
//   {"meta":{"rate_hz":50,"device":"watch"}}
// followed by one sample object per line with fields t (ms), ax, ay, az and
// optionally gx, gy, gz. Sample order must already be chronological;
// out-of-order input is rejected, not sorted. Sub-millisecond timestamps are
// rounded on ingest.
SensorTrace parse_trace(std::istream& in,
                        std::optional<Device> expected_device = std::nullopt);
SensorTrace parse_trace_file(const std::string& path,
                             std::optional<Device> expected_device = std::nullopt);

std::string serialize_trace(const SensorTrace& trace);
void write_trace_file(const SensorTrace& trace, const std::string& path);

// Label files are JSON lines of {"t":<int ms>,"key":"<symbol>"}.
LabelStream parse_labels(std::istream& in);
LabelStream parse_labels_file(const std::string& path);

std::string serialize_labels(const LabelStream& labels);
void write_labels_file(const LabelStream& labels, const std::string& path);

}  // namespace wristleak
