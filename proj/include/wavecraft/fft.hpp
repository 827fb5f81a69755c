#pragma once

#include <vector>

#include "wavecraft/grid.hpp"

namespace wavecraft::fft {

/// In-place unnormalized DFT (FFTW backend, plans cached per size).
/// forward: sum_j x_j exp(-2 pi i j k / N); inverse uses +.
/// Safe to call concurrently from several threads.
void dft(std::vector<cdouble>& data, bool inverse);

/// Signed DFT frequency for bin k on an N-point grid with spacing h.
double frequency(int k, int n, double spacing);

}  // namespace wavecraft::fft
