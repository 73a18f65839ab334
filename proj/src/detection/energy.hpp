#pragma once

#include <vector>

#include "core/types.hpp"

namespace wristleak {

// Per-sample motion energy |ax| + |ay| + |az|; same length as the trace.
struct EnergySeries {
  std::vector<double> values;
};

EnergySeries energy(const SensorTrace& trace);

}  // namespace wristleak
