#include "accelspeech/fft.hpp"

#include <cmath>

namespace accelspeech {

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    fail(Errc::bad_config, "fft size must be a nonzero power of two");

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * M_PI / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }

  if (inverse) {
    for (auto& z : a) z /= static_cast<double>(n);
  }
}

std::vector<std::complex<double>> fft_real(const Eigen::Ref<const VecX>& x, int nfft) {
  std::vector<std::complex<double>> a(static_cast<std::size_t>(nfft));
  const long m = std::min<long>(x.size(), nfft);
  for (long i = 0; i < m; ++i) a[static_cast<std::size_t>(i)] = x[i];
  fft_radix2(a);
  return a;
}

VecX magnitude_spectrum(const Eigen::Ref<const VecX>& x, int nfft) {
  auto a = fft_real(x, nfft);
  VecX mag(nfft / 2 + 1);
  for (int k = 0; k <= nfft / 2; ++k) mag[k] = std::abs(a[static_cast<std::size_t>(k)]);
  return mag;
}

}  // namespace accelspeech
