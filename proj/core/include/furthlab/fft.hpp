#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace furthlab::fft {

/// In-place complex DFT, FFTW backend (any length). forward: e^{-i k x} sign.
void forward(std::vector<std::complex<double>>& data);
void inverse(std::vector<std::complex<double>>& data);  // normalized by 1/n

/// Angular frequencies 2*pi*fftfreq(n, dx) in FFT storage order.
std::vector<double> angular_frequencies(std::size_t n, double dx);

std::size_t next_pow2(std::size_t n);

}  // namespace furthlab::fft
