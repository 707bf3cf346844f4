#pragma once

#include <cstdint>
#include <vector>

namespace accelspeech {

/// splitmix64 stream with explicit uniform/normal transforms.
///
/// Every stochastic component in the toolkit draws from this generator so
/// results are reproducible bit-for-bit across platforms and independent of
/// the standard library's distribution implementations. `split` derives an
/// independent child stream from the construction seed, so parallel
/// schedules cannot change the outcome.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller.
  double normal();

  /// Uniform integer in [lo, hi] inclusive.
  long uniform_int(long lo, long hi);

  /// Child stream keyed by (construction seed, stream id).
  Rng split(std::uint64_t stream) const;

  /// Fisher-Yates in-place shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (long i = static_cast<long>(v.size()) - 1; i > 0; --i) {
      long j = uniform_int(0, i);
      std::swap(v[i], v[static_cast<std::size_t>(j)]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace accelspeech
