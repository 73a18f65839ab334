#pragma once

#include "core/types.hpp"

namespace wristleak {

// Decimates to roughly target_hz by keeping every k-th sample,
// k = round(nominal_rate_hz / target_hz). Decimation rather than
// interpolation: the result mimics a sensor genuinely sampled slower.
SensorTrace resample(const SensorTrace& trace, double target_hz);

}  // namespace wristleak
