#include "detection/energy.hpp"

#include <cmath>

namespace wristleak {

EnergySeries energy(const SensorTrace& trace) {
  if (trace.samples.empty()) throw ValidationError("energy: empty trace");
  EnergySeries series;
  series.values.reserve(trace.samples.size());
  for (const auto& s : trace.samples) {
    series.values.push_back(std::abs(s.ax) + std::abs(s.ay) + std::abs(s.az));
  }
  return series;
}

}  // namespace wristleak
