#pragma once

#include "accelspeech/common.hpp"
#include "accelspeech/ingest.hpp"
#include "accelspeech/rng.hpp"

#include <string>
#include <vector>

namespace accelspeech::sim {

/// Vibration-channel model. The accelerometer point-samples the body
/// vibration with NO anti-alias filter, so source content above
/// sensor_rate/2 folds to |f - N*sensor_rate| by design.
struct ChannelSpec {
  double sensor_rate = 420.0;
  double band_lo = 100.0;      // speaker-to-sensor response band
  double band_hi = 3300.0;
  double attenuation_db = 0.0;
  double hand_motion_std = 0.0;  // low-frequency (<~5 Hz) hand/body noise
  double white_std = 0.0;        // broadband sensor noise
  double leakage_db = -20.0;     // X/Y pickup relative to Z
  double gravity = 0.0;          // constant Z offset
  std::uint64_t seed = 1;
};

/// One utterance class: fundamental plus formant tones with a humped
/// amplitude envelope. Label fields identify speaker/gender/word.
struct SpeakerProfile {
  double fundamental_hz = 120.0;
  double fundamental_amp = 0.9;
  std::vector<std::pair<double, double>> formants;  // (Hz, relative amplitude)
  int env_humps = 1;        // syllable-like amplitude humps
  double hump_depth = 0.0;  // 0 = flat envelope
  std::string speaker_id;
  std::string gender_tag;
  std::string word_id;
};

struct Waveform {
  VecX samples;
  double rate = 16000.0;
};

/// Plain sine at the source rate (alias-experiment input).
Waveform tone(double freq, double duration_s, double rate = 16000.0);

/// Deterministic-per-seed utterance: enveloped sum of fundamental and
/// formant tones with small seeded frequency/amplitude jitter.
/// Duration must lie in [0.1, 2] s.
Waveform synth_utterance(const SpeakerProfile& profile, double duration_s, std::uint64_t seed,
                         double rate = 16000.0);

/// Band-limit to [lo, hi] Hz with raised-cosine edges (FFT domain).
VecX band_limit(const Eigen::Ref<const VecX>& x, double rate, double lo, double hi);

/// Point-sample `src` (at src_rate) on the sensor grid t0 + k/sensor_rate,
/// k = 0..count-1, linear interpolation between source samples, zero outside.
VecX point_sample(const Eigen::Ref<const VecX>& src, double src_rate, double sensor_rate,
                  double t0, long count);

/// Source waveform through the channel: band-limit, attenuate, point-sample
/// at sensor_rate (folding occurs here), inject hand-motion and white noise.
/// Energy lands on Z with leakage_db pickup on X/Y.
ingest::SampleStream transmit(const Waveform& source, const ChannelSpec& channel);

struct GroundTruthRegion {
  long start = 0;  // sample index on the sensor grid, inclusive
  long end = 0;    // exclusive
  std::string speaker, gender, word;
};

struct Corpus {
  ingest::SampleStream stream;
  std::vector<GroundTruthRegion> regions;
  double clean_signal_power = 0.0;  // mean square of the vibration over supports
  double noise_power = 0.0;         // white + hand-motion variance actually used
};

struct CorpusParams {
  double gap_s = 5.0;          // silence between utterances
  double utter_s = 0.4;        // base duration, jittered +-10% per utterance
  double amp_jitter_db = 3.0;  // per-utterance level spread
  double snr_db = std::numeric_limits<double>::quiet_NaN();  // NaN: use channel stds as given
  double hand_factor = 2.0;    // hand_motion_std = hand_factor * white_std when snr_db is set
  std::uint64_t seed = 1;
};

/// Concatenated utterances (classes played one after another) with exact
/// ground-truth boundaries and labels. When params.snr_db is finite the
/// white-noise std is calibrated so that clean signal power over the
/// utterance supports is snr_db above the white-noise power.
Corpus make_corpus(const std::vector<SpeakerProfile>& profiles, int words_per_class,
                   const ChannelSpec& channel, const CorpusParams& params = {});

/// Speaker x digit-word profile grid used by the CLI demo corpus and tests:
/// first half of the speakers male, second half female; each word defines a
/// fixed formant pattern and envelope shape.
std::vector<SpeakerProfile> digit_profiles(int n_speakers, int n_words);

void write_ground_truth_csv(const std::string& path, const Corpus& corpus);

}  // namespace accelspeech::sim
