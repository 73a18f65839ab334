#pragma once

#include <string>

namespace wristleak {

// Hex-encoded SHA-256 digests (OpenSSL-backed); used for run manifests.
std::string sha256_hex(const std::string& data);
std::string sha256_file_hex(const std::string& path);

}  // namespace wristleak
