#pragma once

#include <complex>
#include <vector>

namespace dcilink::detail {

// In-place complex FFT/IFFT on arbitrary-length buffers. The inverse is
// normalized by 1/N. Plans are cached per size and shared; execution is
// safe from concurrent threads on distinct buffers.
void fft_inplace(std::vector<std::complex<double>>& data, bool inverse);

// FFT bin frequencies for an N-point transform at the given sample rate,
// in the same unit as the rate: [0, 1, ..., N/2-1, -N/2, ..., -1] * Fs/N.
std::vector<double> fft_frequencies(std::size_t n, double sample_rate);

}  // namespace dcilink::detail
