#include "synth/synth.hpp"

#include <cmath>

#include <json.hpp>

#include "core/direction_table.hpp"
#include "core/rng.hpp"

namespace wristleak {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kSpikeLen = 14;   // samples, fits inside a keystroke record tail
constexpr double kSpikeTau = 4.0;

int64_t sample_time_ms(size_t index, double rate_hz) {
  return std::llround(static_cast<double>(index) * 1000.0 / rate_hz);
}

// Grid position -> axis split summing to 1; injective over layout keys.
std::array<double, 3> key_weights(const KeypadLayout& layout, char key) {
  const auto [r, c] = layout.coord_of(key);
  const double wx = 1.0 + static_cast<double>(c);
  const double wy = 1.0 + static_cast<double>(r);
  const double wz = 1.5;
  const double s = wx + wy + wz;
  return {wx / s, wy / s, wz / s};
}

double key_freq_hz(const KeypadLayout& layout, char key) {
  const auto [r, c] = layout.coord_of(key);
  return 4.0 + static_cast<double>(r) + 4.0 * static_cast<double>(c);
}

void add_noise(SensorTrace& trace, double sigma, Rng& rng) {
  if (sigma <= 0.0) return;
  for (auto& s : trace.samples) {
    s.ax += rng.normal(0.0, sigma);
    s.ay += rng.normal(0.0, sigma);
    s.az += rng.normal(0.0, sigma);
  }
}

}  // namespace

const KeypadLayout& SynthConfig::layout() const {
  if (layout_name == "numeric") return numeric_layout();
  if (layout_name == "qwerty") return qwerty_layout();
  throw ValidationError("synth: unknown layout '" + layout_name + "'");
}

std::map<Direction, DirectionSignature> default_signatures() {
  // Compass offsets (east, north); O stays in place.
  static const std::map<Direction, std::pair<double, double>> compass = {
      {Direction::N, {0, 1}},   {Direction::S, {0, -1}},  {Direction::E, {1, 0}},
      {Direction::W, {-1, 0}},  {Direction::NE, {1, 1}},  {Direction::NW, {-1, 1}},
      {Direction::SE, {1, -1}}, {Direction::SW, {-1, -1}}, {Direction::O, {0, 0}},
  };
  std::map<Direction, DirectionSignature> sigs;
  for (int d = 0; d < kDirectionCount; ++d) {
    const auto dir = static_cast<Direction>(d);
    const auto [dx, dy] = compass.at(dir);
    DirectionSignature sig;
    sig.freq_hz = 3.0 + 2.0 * d;
    sig.amp = 5.0;
    const double wx = 1.0 + 0.5 * dx;
    const double wy = 1.0 + 0.5 * dy;
    const double wz = 1.0;
    const double s = wx + wy + wz;
    sig.weights = {wx / s, wy / s, wz / s};
    sigs[dir] = sig;
  }
  return sigs;
}

SynthConfig SynthConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("synth config is not valid JSON: ") + e.what());
  }
  SynthConfig c;
  if (j.contains("layout")) c.layout_name = j["layout"].get<std::string>();
  if (j.contains("rate_hz")) c.rate_hz = j["rate_hz"].get<double>();
  if (j.contains("scenario")) {
    const auto s = j["scenario"].get<std::string>();
    if (s == "sh") {
      c.scenario = Scenario::SH;
    } else if (s == "dh") {
      c.scenario = Scenario::DH;
    } else {
      throw ValidationError("synth: scenario must be \"sh\" or \"dh\"");
    }
  }
  if (j.contains("device")) c.device = device_from_name(j["device"].get<std::string>());
  if (j.contains("noise_sigma")) c.noise_sigma = j["noise_sigma"].get<double>();
  if (j.contains("seed")) c.seed = j["seed"].get<uint64_t>();
  if (j.contains("spike_amplitude")) c.spike_amplitude = j["spike_amplitude"].get<double>();
  if (j.contains("min_spacing_ms")) c.min_spacing_ms = j["min_spacing_ms"].get<double>();
  if (j.contains("spacing_jitter_ms")) c.spacing_jitter_ms = j["spacing_jitter_ms"].get<double>();
  if (j.contains("min_duration_ms")) c.min_duration_ms = j["min_duration_ms"].get<double>();
  if (j.contains("max_duration_ms")) c.max_duration_ms = j["max_duration_ms"].get<double>();
  c.signatures = default_signatures();
  if (j.contains("signatures")) {
    for (const auto& [name, sj] : j["signatures"].items()) {
      DirectionSignature sig = c.signatures[direction_from_name(name)];
      if (sj.contains("freq_hz")) sig.freq_hz = sj["freq_hz"].get<double>();
      if (sj.contains("amp")) sig.amp = sj["amp"].get<double>();
      if (sj.contains("weights")) {
        const auto w = sj["weights"].get<std::vector<double>>();
        if (w.size() != 3) throw ValidationError("synth: signature weights must have 3 entries");
        sig.weights = {w[0], w[1], w[2]};
      }
      c.signatures[direction_from_name(name)] = sig;
    }
  }

  if (!(c.rate_hz > 0.0)) throw ValidationError("synth: rate_hz must be positive");
  if (c.noise_sigma < 0.0) throw ValidationError("synth: noise_sigma must be >= 0");
  if (c.scenario == Scenario::SH && !(c.spike_amplitude > 0.0)) {
    throw ValidationError("synth: spike_amplitude must be positive");
  }
  if (c.min_spacing_ms < 350.0) {
    throw ValidationError("synth: min_spacing_ms must be at least 350");
  }
  if (c.min_duration_ms < 200.0 || c.max_duration_ms > 2000.0 ||
      c.min_duration_ms > c.max_duration_ms) {
    throw ValidationError("synth: segment durations must lie within 200..2000 ms");
  }
  return c;
}

std::string SynthConfig::to_json() const {
  nlohmann::ordered_json j;
  j["layout"] = layout_name;
  j["rate_hz"] = rate_hz;
  j["scenario"] = scenario == Scenario::SH ? "sh" : "dh";
  j["device"] = device_name(device);
  j["noise_sigma"] = noise_sigma;
  j["seed"] = seed;
  j["spike_amplitude"] = spike_amplitude;
  j["min_spacing_ms"] = min_spacing_ms;
  j["spacing_jitter_ms"] = spacing_jitter_ms;
  j["min_duration_ms"] = min_duration_ms;
  j["max_duration_ms"] = max_duration_ms;
  nlohmann::ordered_json sigs;
  for (const auto& [dir, sig] : signatures) {
    nlohmann::ordered_json sj;
    sj["freq_hz"] = sig.freq_hz;
    sj["amp"] = sig.amp;
    sj["weights"] = sig.weights;
    sigs[direction_name(dir)] = std::move(sj);
  }
  j["signatures"] = std::move(sigs);
  return j.dump(2) + "\n";
}

std::pair<SensorTrace, LabelStream> generate_sh(const SynthConfig& config,
                                                const std::string& keys) {
  if (config.scenario != Scenario::SH) throw ValidationError("generate_sh: config is not SH");
  if (keys.empty()) throw ValidationError("generate_sh: empty key sequence");
  const KeypadLayout& layout = config.layout();
  for (char k : keys) {
    if (!layout.contains(k)) {
      throw ValidationError("generate_sh: key '" + std::string(1, k) + "' not in layout");
    }
  }

  Rng rng(config.seed);
  const double rate = config.rate_hz;
  const auto spacing_base =
      static_cast<size_t>(std::ceil(config.min_spacing_ms * rate / 1000.0));
  const auto jitter =
      static_cast<size_t>(std::floor(config.spacing_jitter_ms * rate / 1000.0));
  const size_t margin = 25;

  // Lay out spike onsets first so the structural draws are independent of
  // the noise draws.
  std::vector<size_t> onsets;
  onsets.reserve(keys.size());
  size_t onset = margin;
  for (size_t k = 0; k < keys.size(); ++k) {
    onsets.push_back(onset);
    onset += spacing_base + (jitter > 0 ? rng.below(jitter + 1) : 0);
  }
  const size_t total = onsets.back() + kSpikeLen + margin;

  SensorTrace trace;
  trace.nominal_rate_hz = rate;
  trace.device = config.device;
  trace.samples.resize(total);
  for (size_t i = 0; i < total; ++i) trace.samples[i].t = sample_time_ms(i, rate);

  LabelStream labels;
  for (size_t k = 0; k < keys.size(); ++k) {
    const char key = keys[k];
    const auto w = key_weights(layout, key);
    const double f = key_freq_hz(layout, key);
    for (int j = 0; j < kSpikeLen; ++j) {
      const double envelope = config.spike_amplitude *
                              std::exp(-static_cast<double>(j) / kSpikeTau) *
                              std::cos(kTwoPi * f * static_cast<double>(j) / rate);
      SensorSample& s = trace.samples[onsets[k] + static_cast<size_t>(j)];
      s.ax += envelope * w[0];
      s.ay += envelope * w[1];
      s.az += envelope * w[2];
    }
    labels.events.push_back({trace.samples[onsets[k]].t, key});
  }

  add_noise(trace, config.noise_sigma, rng);
  trace.validate();
  labels.validate();
  return {std::move(trace), std::move(labels)};
}

std::pair<SensorTrace, LabelStream> generate_dh(const SynthConfig& config,
                                                const std::string& keys) {
  if (config.scenario != Scenario::DH) throw ValidationError("generate_dh: config is not DH");
  if (keys.size() < 2) throw ValidationError("generate_dh: need at least 2 keys");
  const KeypadLayout& layout = config.layout();

  Rng rng(config.seed);
  const double rate = config.rate_hz;
  const size_t margin = 10;

  // Segment plan first, then waveforms, then noise.
  std::vector<size_t> press_at{margin};
  std::vector<Direction> dirs;
  for (size_t k = 0; k + 1 < keys.size(); ++k) {
    dirs.push_back(direction_of(keys[k], keys[k + 1], layout));
    const auto duration_ms = static_cast<double>(
        rng.uniform_int(std::llround(config.min_duration_ms), std::llround(config.max_duration_ms)));
    const auto len = std::max<size_t>(1, static_cast<size_t>(std::llround(duration_ms * rate / 1000.0)));
    press_at.push_back(press_at.back() + len);
  }
  const size_t total = press_at.back() + margin;

  SensorTrace trace;
  trace.nominal_rate_hz = rate;
  trace.device = config.device;
  trace.samples.resize(total);
  for (size_t i = 0; i < total; ++i) trace.samples[i].t = sample_time_ms(i, rate);

  for (size_t seg = 0; seg < dirs.size(); ++seg) {
    const DirectionSignature& sig = config.signatures.at(dirs[seg]);
    for (size_t i = press_at[seg]; i < press_at[seg + 1]; ++i) {
      const double phase = kTwoPi * sig.freq_hz * static_cast<double>(i - press_at[seg]) / rate;
      SensorSample& s = trace.samples[i];
      s.ax += sig.amp * sig.weights[0] * std::sin(phase);
      s.ay += sig.amp * sig.weights[1] * std::sin(phase + kTwoPi / 3.0);
      s.az += sig.amp * sig.weights[2] * std::sin(phase + 2.0 * kTwoPi / 3.0);
    }
  }

  LabelStream labels;
  for (size_t k = 0; k < keys.size(); ++k) {
    labels.events.push_back({trace.samples[press_at[k]].t, keys[k]});
  }

  add_noise(trace, config.noise_sigma, rng);
  trace.validate();
  labels.validate();
  return {std::move(trace), std::move(labels)};
}

}  // namespace wristleak
