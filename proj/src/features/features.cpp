#include "features/features.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "features/fft.hpp"
#include "features/stats.hpp"

namespace wristleak {

namespace {

void check_dimension(const FeatureVector& v) {
  const FeatureSchema& s = schema(v.schema_id);
  if (v.values.size() != s.dimension()) {
    throw InconsistencyError("feature vector has " + std::to_string(v.values.size()) +
                             " values, schema " + v.schema_id + " declares " +
                             std::to_string(s.dimension()));
  }
  for (double x : v.values) {
    if (!std::isfinite(x)) throw InconsistencyError("non-finite feature under " + v.schema_id);
  }
}

std::array<std::vector<double>, 3> accel_axes(const std::vector<SensorSample>& samples) {
  std::array<std::vector<double>, 3> axes;
  for (auto& a : axes) a.reserve(samples.size());
  for (const auto& s : samples) {
    axes[0].push_back(s.ax);
    axes[1].push_back(s.ay);
    axes[2].push_back(s.az);
  }
  return axes;
}

std::array<std::vector<double>, 3> gyro_axes(const std::vector<SensorSample>& samples) {
  std::array<std::vector<double>, 3> axes;
  for (auto& a : axes) a.reserve(samples.size());
  for (const auto& s : samples) {
    axes[0].push_back(s.gx);
    axes[1].push_back(s.gy);
    axes[2].push_back(s.gz);
  }
  return axes;
}

// Largest singular value of the n x 3 sample matrix, via the closed-form
// eigenvalues of its 3x3 Gram matrix.
double spectral_norm(const std::array<std::vector<double>, 3>& axes) {
  double g[3][3] = {};
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      double acc = 0.0;
      for (size_t i = 0; i < axes[0].size(); ++i) acc += axes[a][i] * axes[b][i];
      g[a][b] = g[b][a] = acc;
    }
  }
  const double p1 = g[0][1] * g[0][1] + g[0][2] * g[0][2] + g[1][2] * g[1][2];
  double lambda_max;
  if (p1 == 0.0) {
    lambda_max = std::max({g[0][0], g[1][1], g[2][2]});
  } else {
    const double q = (g[0][0] + g[1][1] + g[2][2]) / 3.0;
    const double p2 = (g[0][0] - q) * (g[0][0] - q) + (g[1][1] - q) * (g[1][1] - q) +
                      (g[2][2] - q) * (g[2][2] - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    double bn[3][3];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) bn[a][b] = (g[a][b] - (a == b ? q : 0.0)) / p;
    }
    const double det = bn[0][0] * (bn[1][1] * bn[2][2] - bn[1][2] * bn[2][1]) -
                       bn[0][1] * (bn[1][0] * bn[2][2] - bn[1][2] * bn[2][0]) +
                       bn[0][2] * (bn[1][0] * bn[2][1] - bn[1][1] * bn[2][0]);
    const double r = std::clamp(det / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    lambda_max = q + 2.0 * p * std::cos(phi);
  }
  return std::sqrt(std::max(lambda_max, 0.0));
}

size_t argmax_abs(const std::vector<double>& v) {
  size_t best = 0;
  for (size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  return best;
}

size_t argmin_abs(const std::vector<double>& v) {
  size_t best = 0;
  for (size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) < std::abs(v[best])) best = i;
  }
  return best;
}

double dominant_nondc_magnitude(const std::vector<double>& mags) {
  double best = 0.0;
  for (size_t k = 1; k < mags.size(); ++k) best = std::max(best, mags[k]);
  return best;
}

// Strict local maxima above mean + 1 stddev.
std::vector<size_t> spike_indices(const std::vector<double>& v) {
  std::vector<size_t> peaks;
  if (v.size() < 3) return peaks;
  const double mu = mean_of(v);
  const double sigma = std::sqrt(variance_of(v));
  if (sigma == 0.0) return peaks;
  const double floor = mu + sigma;
  for (size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > floor && v[i] > v[i - 1] && v[i] > v[i + 1]) peaks.push_back(i);
  }
  return peaks;
}

// Angle at the global-|value| peak subtended by the window endpoints, on an
// amplitude-normalized copy so the feature is scale-invariant. 0 when flat.
double vertex_angle(const std::vector<double>& v) {
  const size_t n = v.size();
  if (n < 3) return 0.0;
  double max_abs = 0.0;
  for (double x : v) max_abs = std::max(max_abs, std::abs(x));
  if (max_abs == 0.0) return 0.0;
  const size_t p = argmax_abs(v);
  if (p == 0 || p == n - 1) return 0.0;
  const double scale = 1.0 / max_abs;
  const double ux = -(static_cast<double>(p)), uy = (v[0] - v[p]) * scale;
  const double wx = static_cast<double>(n - 1 - p), wy = (v[n - 1] - v[p]) * scale;
  const double nu = std::hypot(ux, uy), nw = std::hypot(wx, wy);
  if (nu == 0.0 || nw == 0.0) return 0.0;
  const double c = std::clamp((ux * wx + uy * wy) / (nu * nw), -1.0, 1.0);
  return std::acos(c);
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean_of(a), mb = mean_of(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

FeatureVector keystroke_features(const KeystrokeRecord& record) {
  if (record.samples.size() != kKeystrokeSamples) {
    throw ValidationError("keystroke_features: record must have exactly " +
                          std::to_string(kKeystrokeSamples) + " samples");
  }
  const auto axes = accel_axes(record.samples);
  const size_t n = record.samples.size();

  FeatureVector out;
  out.schema_id = kSchemaWatchAccel;
  if (record.label) out.label = std::string(1, *record.label);
  auto& f = out.values;
  f.reserve(155);

  for (const auto& v : axes) {
    double min_mag = std::abs(v[0]), max_mag = std::abs(v[0]);
    for (double x : v) {
      min_mag = std::min(min_mag, std::abs(x));
      max_mag = std::max(max_mag, std::abs(x));
    }
    // Inclusive cutoffs; on an all-zero axis both sums are 0 either way.
    double low = 0.0, high = 0.0;
    for (double x : v) {
      if (std::abs(x) <= 0.33 * max_mag) low += x * x;
      if (std::abs(x) >= 0.67 * max_mag) high += x * x;
    }
    f.push_back(min_mag);
    f.push_back(max_mag);
    f.push_back(low);
    f.push_back(high);
    f.push_back(static_cast<double>(argmax_abs(v)));
    f.push_back(static_cast<double>(argmin_abs(v)));
    f.push_back(mean_of(v));
    f.push_back(median_of(v));
    f.push_back(variance_of(v));
    f.push_back(std::sqrt(variance_of(v)));
    f.push_back(skewness_of(v));
    f.push_back(kurtosis_of(v));
    for (double x : v) f.push_back(x);
    for (size_t i = 0; i + 1 < v.size(); ++i) f.push_back(v[i + 1] - v[i]);
  }

  double gmin = std::abs(axes[0][0]), gmax = gmin, frob2 = 0.0, inf_norm = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double row1 = 0.0;
    for (const auto& v : axes) {
      const double a = std::abs(v[i]);
      gmin = std::min(gmin, a);
      gmax = std::max(gmax, a);
      frob2 += v[i] * v[i];
      row1 += a;
    }
    inf_norm = std::max(inf_norm, row1);
  }
  double one_norm = 0.0;
  for (const auto& v : axes) {
    double col = 0.0;
    for (double x : v) col += std::abs(x);
    one_norm = std::max(one_norm, col);
  }
  f.push_back(gmin);
  f.push_back(gmax);
  f.push_back(std::sqrt(frob2));
  f.push_back(inf_norm);
  f.push_back(one_norm);
  f.push_back(spectral_norm(axes));

  // Per-sample dominant/weakest axis tallies; ties go to the lowest axis.
  int maxc[3] = {0, 0, 0}, minc[3] = {0, 0, 0};
  for (size_t i = 0; i < n; ++i) {
    int amax = 0, amin = 0;
    for (int a = 1; a < 3; ++a) {
      if (std::abs(axes[a][i]) > std::abs(axes[amax][i])) amax = a;
      if (std::abs(axes[a][i]) < std::abs(axes[amin][i])) amin = a;
    }
    ++maxc[amax];
    ++minc[amin];
  }
  for (int a = 0; a < 3; ++a) f.push_back(static_cast<double>(maxc[a]));
  f.push_back(static_cast<double>(minc[0]));
  f.push_back(static_cast<double>(minc[1]));

  for (const auto& v : axes) {
    f.push_back(dominant_nondc_magnitude(fft_magnitudes(v, kKeystrokeFftSize)));
  }

  check_dimension(out);
  return out;
}

FeatureVector gyro_features(const KeystrokeRecord& record) {
  if (!record.has_gyro) throw ValidationError("gyro_features: record has no gyro channels");
  if (record.samples.size() != kKeystrokeSamples) {
    throw ValidationError("gyro_features: record must have exactly " +
                          std::to_string(kKeystrokeSamples) + " samples");
  }
  const auto axes = gyro_axes(record.samples);

  FeatureVector out;
  out.schema_id = kSchemaGyro;
  if (record.label) out.label = std::string(1, *record.label);
  auto& f = out.values;
  f.reserve(59);

  for (const auto& v : axes) {
    f.push_back(*std::min_element(v.begin(), v.end()));
    f.push_back(*std::max_element(v.begin(), v.end()));
    f.push_back(mean_of(v));
    f.push_back(variance_of(v));
    f.push_back(skewness_of(v));
    f.push_back(kurtosis_of(v));

    const auto peaks = spike_indices(v);
    f.push_back(static_cast<double>(peaks.size()));
    if (peaks.size() >= 2) {
      double gaps = 0.0;
      for (size_t i = 1; i < peaks.size(); ++i) {
        gaps += static_cast<double>(peaks[i] - peaks[i - 1]);
      }
      f.push_back(gaps / static_cast<double>(peaks.size() - 1));
    } else {
      f.push_back(0.0);
    }

    // Energy ratio of the last third of the window to the first third.
    const size_t third = v.size() / 3;
    double head = 0.0, tail = 0.0;
    for (size_t i = 0; i < third; ++i) head += v[i] * v[i];
    for (size_t i = v.size() - third; i < v.size(); ++i) tail += v[i] * v[i];
    f.push_back(head == 0.0 ? 0.0 : tail / head);

    f.push_back(vertex_angle(v));

    const auto mags = fft_magnitudes(v, kKeystrokeFftSize);
    for (int k = 0; k < 9; ++k) f.push_back(mags[k]);
  }

  double gmin = axes[0][0], gmax = axes[0][0];
  for (const auto& v : axes) {
    for (double x : v) {
      gmin = std::min(gmin, x);
      gmax = std::max(gmax, x);
    }
  }
  f.push_back(gmin);
  f.push_back(gmax);

  check_dimension(out);
  return out;
}

FeatureVector transition_features(const TransitionRecord& record) {
  if (record.samples.size() < 4) {
    throw ValidationError("transition_features: record shorter than 4 samples");
  }
  const auto axes = accel_axes(record.samples);

  FeatureVector out;
  out.schema_id = kSchemaTransition;
  if (record.label) out.label = direction_name(*record.label);
  auto& f = out.values;
  f.reserve(138);

  std::array<std::vector<double>, 3> spectra;
  for (int a = 0; a < 3; ++a) {
    const auto& v = axes[a];
    const auto mags = fft_magnitudes(v, kTransitionFftSize);
    spectra[a] = mags;

    for (double m : mags) f.push_back(m);
    f.push_back(mean_of(mags));

    double total = 0.0;
    for (double m : mags) total += m * m;
    double rolloff = 0.0;
    if (total > 0.0) {
      double acc = 0.0;
      for (size_t k = 0; k < mags.size(); ++k) {
        acc += mags[k] * mags[k];
        if (acc >= 0.85 * total) {
          rolloff = static_cast<double>(k);
          break;
        }
      }
    }
    f.push_back(rolloff);

    double mag_sum = 0.0, weighted = 0.0;
    for (size_t k = 0; k < mags.size(); ++k) {
      mag_sum += mags[k];
      weighted += static_cast<double>(k) * mags[k];
    }
    f.push_back(mag_sum == 0.0 ? 0.0 : weighted / mag_sum);

    // Flux of the full window against its first half.
    const std::vector<double> half(v.begin(), v.begin() + (v.size() + 1) / 2);
    const auto half_mags = fft_magnitudes(half, kTransitionFftSize);
    double flux2 = 0.0;
    for (size_t k = 0; k < mags.size(); ++k) {
      const double d = mags[k] - half_mags[k];
      flux2 += d * d;
    }
    f.push_back(std::sqrt(flux2));

    // Periodogram band energies over bins 0..31, eight bands of four bins.
    for (int band = 0; band < 8; ++band) {
      double acc = 0.0;
      for (int k = 4 * band; k < 4 * band + 4; ++k) acc += mags[k] * mags[k];
      f.push_back(acc / 4.0);
    }
  }

  f.push_back(pearson(spectra[0], spectra[1]));
  f.push_back(pearson(spectra[0], spectra[2]));
  f.push_back(pearson(spectra[1], spectra[2]));

  check_dimension(out);
  return out;
}

FeatureVector fuse(const FeatureVector& watch, const FeatureVector& phone) {
  if (watch.schema_id != kSchemaWatchAccel || phone.schema_id != kSchemaWatchAccel) {
    throw ValidationError("fuse: both inputs must use schema watch-accel-155");
  }
  FeatureVector out;
  out.schema_id = kSchemaFused;
  out.values = watch.values;
  out.values.insert(out.values.end(), phone.values.begin(), phone.values.end());
  out.label = watch.label ? watch.label : phone.label;
  out.subject = watch.subject ? watch.subject : phone.subject;
  check_dimension(out);
  return out;
}

FeatureVector combine_accel_gyro(const FeatureVector& accel, const FeatureVector& gyro) {
  if (accel.schema_id != kSchemaWatchAccel || gyro.schema_id != kSchemaGyro) {
    throw ValidationError("combine_accel_gyro: expected schemas watch-accel-155 and gyro-59");
  }
  FeatureVector out;
  out.schema_id = kSchemaAccelGyro;
  out.values = accel.values;
  out.values.insert(out.values.end(), gyro.values.begin(), gyro.values.end());
  out.label = accel.label ? accel.label : gyro.label;
  out.subject = accel.subject ? accel.subject : gyro.subject;
  check_dimension(out);
  return out;
}

}  // namespace wristleak
