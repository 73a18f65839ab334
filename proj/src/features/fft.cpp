#include "features/fft.hpp"

#include <cmath>

#include "core/error.hpp"

namespace wristleak {

void fft_inplace(std::vector<std::complex<double>>& data) {
  const size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0) throw ValidationError("fft size must be a power of two");

  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  for (size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = data[i + k];
        const std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

std::vector<double> fft_magnitudes(const std::vector<double>& signal, size_t padded_size) {
  std::vector<std::complex<double>> buf(padded_size, {0.0, 0.0});
  const size_t m = std::min(signal.size(), padded_size);
  for (size_t i = 0; i < m; ++i) buf[i] = {signal[i], 0.0};
  fft_inplace(buf);
  std::vector<double> mags(padded_size / 2 + 1);
  for (size_t k = 0; k < mags.size(); ++k) mags[k] = std::abs(buf[k]);
  return mags;
}

}  // namespace wristleak
