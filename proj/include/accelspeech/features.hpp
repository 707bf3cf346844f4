#pragma once

#include "accelspeech/common.hpp"
#include "accelspeech/dsp.hpp"
#include "accelspeech/ingest.hpp"
#include "accelspeech/segment.hpp"

#include <array>
#include <string>
#include <vector>

namespace accelspeech::features {

inline constexpr int kNumTime = 13;
inline constexpr int kNumFreq = 12;
inline constexpr int kNumFeatures = kNumTime + kNumFreq;

/// Canonical feature order: 13 time-domain then 12 frequency-domain.
const std::array<std::string, kNumFeatures>& feature_names();

using Vec13 = Eigen::Matrix<double, kNumTime, 1>;
using Vec12 = Eigen::Matrix<double, kNumFreq, 1>;
using Vec25 = Eigen::Matrix<double, kNumFeatures, 1>;

struct FeatureVector {
  Vec25 values;
  std::string label;
  long region_id = 0;
};

/// Time-domain statistics of a region, in canonical order:
/// min, max, mean, std, variance, range, cv, skewness, kurtosis,
/// q25, q50, q85, mean_crossing_rate.
///
/// Conventions: central moments are normalized by n; skewness and kurtosis
/// (non-excess) are 0 when the second moment is below 1e-24; quantiles use
/// linear interpolation between order statistics at 1-based position
/// p*(n-1)+1; cv = std / (|mean| + 1e-12); the mean-crossing rate counts
/// strict sign changes of x - mean over adjacent pairs, divided by n-1.
/// Requires length >= 4.
Vec13 time_features(const Eigen::Ref<const VecX>& x);

/// Frequency-domain statistics of a region, in canonical order:
/// energy, entropy, freq_ratio, irregularity_k, irregularity_j, sharpness,
/// smoothness, spec_centroid, spec_stddev, spec_crest, spec_skewness,
/// spec_kurtosis.
///
/// The spectral basis is the magnitude spectrum M[k] of the mean-removed,
/// Hann-windowed region zero-padded to the next power of two, with bins
/// k = 1..K (DC excluded, Nyquist included, K = nfft/2) at frequencies f_k.
/// Degenerate spectra (all-zero, or a single nonzero bin where a moment
/// denominator vanishes) return 0 for the affected features rather than NaN.
/// Requires length >= 8.
Vec12 freq_features(const Eigen::Ref<const VecX>& x, double rate);

/// Both families computed on an explicit magnitude spectrum (test hook).
Vec12 freq_features_of_spectrum(const Eigen::Ref<const VecX>& mags, const Eigen::Ref<const VecX>& freqs);

struct ExtractConfig {
  dsp::FilterSpec filter;       // applied per axis before slicing regions
  bool apply_filter = true;
};

/// One feature vector per region, sliced from the (filtered) axis named by
/// each region. Labels, when given, must parallel the region list. Any
/// non-finite feature raises NonFiniteFeature naming the region and feature.
std::vector<FeatureVector> extract_all(const ingest::SampleStream& stream,
                                       const std::vector<segment::WordRegion>& regions,
                                       const ExtractConfig& config,
                                       const std::vector<std::string>& labels = {});

/// Feature CSV: the 25 canonical names + label + region_id.
void write_features_csv(const std::string& path, const std::vector<FeatureVector>& vectors);
std::vector<FeatureVector> read_features_csv(const std::string& path);

}  // namespace accelspeech::features
