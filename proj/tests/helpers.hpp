#pragma once

#include <string>
#include <vector>

#include "core/rng.hpp"
#include "core/types.hpp"

namespace wristleak::testing {

inline SensorSample sample_at(int64_t t, double ax, double ay, double az) {
  SensorSample s;
  s.t = t;
  s.ax = ax;
  s.ay = ay;
  s.az = az;
  return s;
}

inline KeystrokeRecord random_record(Rng& rng, bool gyro = false, double scale = 1.0) {
  KeystrokeRecord r;
  r.has_gyro = gyro;
  for (int i = 0; i < kKeystrokeSamples; ++i) {
    SensorSample s;
    s.t = 20 * i;
    s.ax = scale * rng.normal();
    s.ay = scale * rng.normal();
    s.az = scale * rng.normal();
    if (gyro) {
      s.gx = scale * rng.normal();
      s.gy = scale * rng.normal();
      s.gz = scale * rng.normal();
    }
    r.samples.push_back(s);
  }
  return r;
}

inline TransitionRecord random_transition(Rng& rng, size_t len) {
  TransitionRecord r;
  for (size_t i = 0; i < len; ++i) {
    SensorSample s;
    s.t = static_cast<int64_t>(20 * i);
    s.ax = rng.normal();
    s.ay = rng.normal();
    s.az = rng.normal();
    r.samples.push_back(s);
  }
  r.start_t = 0;
  r.end_t = static_cast<int64_t>(20 * len);
  return r;
}

inline std::string random_digits(Rng& rng, size_t count) {
  std::string keys;
  for (size_t i = 0; i < count; ++i) keys.push_back(static_cast<char>('0' + rng.below(10)));
  return keys;
}

}  // namespace wristleak::testing
