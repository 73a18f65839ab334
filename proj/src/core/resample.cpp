#include "core/resample.hpp"

#include <cmath>

namespace wristleak {

SensorTrace resample(const SensorTrace& trace, double target_hz) {
  if (!(target_hz > 0.0) || !std::isfinite(target_hz)) {
    throw ValidationError("resample: target rate must be positive");
  }
  if (target_hz > trace.nominal_rate_hz) {
    throw ValidationError("resample: target rate exceeds the trace's nominal rate");
  }
  const auto k = static_cast<size_t>(std::llround(trace.nominal_rate_hz / target_hz));
  SensorTrace out;
  out.device = trace.device;
  out.has_gyro = trace.has_gyro;
  out.nominal_rate_hz = trace.nominal_rate_hz / static_cast<double>(k);
  out.samples.reserve(trace.samples.size() / k + 1);
  for (size_t i = 0; i < trace.samples.size(); i += k) {
    out.samples.push_back(trace.samples[i]);
  }
  return out;
}

}  // namespace wristleak
