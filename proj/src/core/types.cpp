#include "core/types.hpp"

#include <cmath>

namespace wristleak {

const char* device_name(Device d) {
  return d == Device::Watch ? "watch" : "phone";
}

Device device_from_name(const std::string& name) {
  if (name == "watch") return Device::Watch;
  if (name == "phone") return Device::Phone;
  throw ValidationError("unknown device '" + name + "' (expected watch or phone)");
}

void SensorTrace::validate() const {
  if (!(nominal_rate_hz > 0.0) || !std::isfinite(nominal_rate_hz)) {
    throw ValidationError("trace nominal rate must be a positive finite number");
  }
  int64_t prev_t = -1;
  size_t i = 0;
  for (const auto& s : samples) {
    if (s.t < 0) throw ValidationError("sample " + std::to_string(i) + ": negative timestamp");
    if (s.t <= prev_t) {
      throw ValidationError("sample " + std::to_string(i) +
                            ": timestamps not strictly increasing");
    }
    const double vals[] = {s.ax, s.ay, s.az, s.gx, s.gy, s.gz};
    const int arity = has_gyro ? 6 : 3;
    for (int c = 0; c < arity; ++c) {
      if (!std::isfinite(vals[c])) {
        throw ValidationError("sample " + std::to_string(i) + ": non-finite channel value");
      }
    }
    prev_t = s.t;
    ++i;
  }
}

void LabelStream::validate() const {
  int64_t prev_t = -1;
  size_t i = 0;
  for (const auto& e : events) {
    if (e.t < 0) throw ValidationError("label " + std::to_string(i) + ": negative timestamp");
    if (e.t <= prev_t) {
      throw ValidationError("label " + std::to_string(i) +
                            ": timestamps not strictly increasing");
    }
    prev_t = e.t;
    ++i;
  }
}

namespace {
constexpr const char* kDirectionNames[kDirectionCount] = {"N",  "S",  "E",  "W", "NE",
                                                          "NW", "SE", "SW", "O"};
}

const char* direction_name(Direction d) {
  return kDirectionNames[static_cast<size_t>(d)];
}

Direction direction_from_name(const std::string& name) {
  for (int i = 0; i < kDirectionCount; ++i) {
    if (name == kDirectionNames[i]) return static_cast<Direction>(i);
  }
  throw ValidationError("unknown direction '" + name + "'");
}

Direction opposite(Direction d) {
  switch (d) {
    case Direction::N: return Direction::S;
    case Direction::S: return Direction::N;
    case Direction::E: return Direction::W;
    case Direction::W: return Direction::E;
    case Direction::NE: return Direction::SW;
    case Direction::SW: return Direction::NE;
    case Direction::NW: return Direction::SE;
    case Direction::SE: return Direction::NW;
    case Direction::O: return Direction::O;
  }
  throw ValidationError("invalid direction value");
}

}  // namespace wristleak
