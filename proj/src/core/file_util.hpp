#pragma once

#include <string>

namespace wristleak {

std::string read_file(const std::string& path);

// Writes content to a sibling temp file and renames it into place, so readers
// never observe a partially written artifact.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace wristleak
