#pragma once

#include "accelspeech/common.hpp"

#include <complex>
#include <vector>

namespace accelspeech {

/// In-place iterative radix-2 FFT. Size must be a power of two.
/// The inverse transform includes the 1/n normalization.
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse = false);

/// Full complex spectrum of a real signal zero-padded (or truncated) to nfft.
std::vector<std::complex<double>> fft_real(const Eigen::Ref<const VecX>& x, int nfft);

/// One-sided magnitude spectrum, bins 0..nfft/2 inclusive.
VecX magnitude_spectrum(const Eigen::Ref<const VecX>& x, int nfft);

}  // namespace accelspeech
