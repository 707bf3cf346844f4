#pragma once

#include "accelspeech/common.hpp"

#include <string>
#include <vector>

namespace accelspeech::dsp {

/// Butterworth high-pass description. Applied zero-phase, so the effective
/// magnitude response is |H|^2 of the single-pass design.
struct FilterSpec {
  double cutoff_hz = 1.0;
  int order = 4;
};

struct Biquad {
  double b0, b1, b2;  // numerator
  double a1, a2;      // denominator, a0 == 1
};

/// Bilinear-transform Butterworth high-pass as second-order sections with the
/// overall gain folded into the first section. Requires 0 < cutoff < rate/2
/// and order in [1, 8].
std::vector<Biquad> design_highpass(const FilterSpec& spec, double rate);

/// Single forward pass through the cascade with steady-state initial
/// conditions scaled to x[0].
VecX sosfilt(const std::vector<Biquad>& sos, const Eigen::Ref<const VecX>& x);

/// Zero-phase (forward-backward) high-pass with odd-reflection padding.
/// Output length equals input length.
VecX highpass(const Eigen::Ref<const VecX>& x, double rate, const FilterSpec& spec);

/// Analytic magnitude response of the digital design at frequency f (single
/// pass; square it for the zero-phase response).
double highpass_gain(const FilterSpec& spec, double rate, double f);

struct Spectrogram {
  MatX magnitudes;   // time_frames x freq_bins, non-negative
  VecX frame_times;  // seconds, window centers
  VecX bin_freqs;    // Hz, spans [0, rate/2]
  int window_len = 0;
  int hop = 0;
  double rate = 0.0;
};

/// Periodic Hann window.
VecX hann_window(int n);

/// Hann-windowed magnitude STFT. Frames are zero-padded to the next power of
/// two; bins run 0..nfft/2 inclusive; frame count is
/// floor((n - window_len)/hop) + 1.
Spectrogram stft(const Eigen::Ref<const VecX>& x, double rate, int window_len = 64, int hop = 16);

/// Log-magnitude image: dB relative to the peak magnitude, floored at -80 dB,
/// min-max normalized to [0,255], bilinearly resized to size x size.
/// Rows run top-to-bottom from high to low frequency; columns are time.
ImageU8 render_image(const Spectrogram& spec, int size = 128);

void write_spectrogram_csv(const std::string& path, const Spectrogram& spec);

struct AliasPrediction {
  double source_freq;  // f
  double sensor_rate;  // f_s
  long fold_index;     // N
  double alias_freq;   // f_a = |f - N*f_s|, in [0, f_s/2]
};

/// Frequency folding under point sampling: the N minimizing |f - N*f_s| with
/// the alias inside [0, f_s/2]. Ties on the band edge resolve to the
/// smaller N.
AliasPrediction predict_alias(double f, double f_s);

}  // namespace accelspeech::dsp
