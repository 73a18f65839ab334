#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace wristleak {

// In-place iterative radix-2 transform; size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& data);

// Magnitude spectrum of a real signal zero-padded (or truncated) to
// padded_size samples. Returns padded_size/2 + 1 magnitudes, DC to Nyquist.
std::vector<double> fft_magnitudes(const std::vector<double>& signal, size_t padded_size);

}  // namespace wristleak
