#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace wristleak {

// Record files are JSON lines. Keystroke records:
//   {"kind":"keystroke","start_t":...,"detect_index":3,"device":"watch",
//    "label":"7","samples":[{"t":...,"ax":...,...},...]}
// Transition records:
//   {"kind":"transition","start_t":...,"end_t":...,"label":"N","samples":[...]}
// A trailing {"diagnostics":{...}} line is permitted and skipped on read.
// "kind" may be omitted; it is inferred from detect_index/end_t.
struct RecordBundle {
  std::vector<KeystrokeRecord> keystrokes;
  std::vector<TransitionRecord> transitions;
};

RecordBundle parse_records(std::istream& in);
RecordBundle parse_records_file(const std::string& path);

// diagnostics_json, when given, must be a serialized JSON object; it is
// appended as the final {"diagnostics":...} line.
std::string serialize_keystroke_records(const std::vector<KeystrokeRecord>& records,
                                        const std::optional<std::string>& diagnostics_json = {});
std::string serialize_transition_records(const std::vector<TransitionRecord>& records);

void write_keystroke_records_file(const std::vector<KeystrokeRecord>& records,
                                  const std::string& path,
                                  const std::optional<std::string>& diagnostics_json = {});
void write_transition_records_file(const std::vector<TransitionRecord>& records,
                                   const std::string& path);

}  // namespace wristleak
