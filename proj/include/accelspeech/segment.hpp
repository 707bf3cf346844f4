#pragma once

#include "accelspeech/common.hpp"
#include "accelspeech/dsp.hpp"
#include "accelspeech/ingest.hpp"

#include <map>
#include <string>
#include <vector>

namespace accelspeech::segment {

struct SegmentParams {
  double env_window_s = 0.05;  // RMS envelope window
  double k_mad = 4.0;          // threshold = median + k_mad * MAD of envelope
  double merge_gap_s = 0.15;   // super-threshold runs closer than this merge
  double min_dur_s = 0.10;     // shorter runs are dropped
  double max_dur_s = 2.0;      // longer runs are truncated
};

/// One detected word region, [start, end) in sample indices.
struct WordRegion {
  long start = 0;
  long end = 0;
  double peak_energy = 0.0;  // peak envelope value inside the region
  Axis axis = Axis::Z;
};

struct AxisVarianceReport {
  double var_x = 0.0, var_y = 0.0, var_z = 0.0;

  double of(Axis a) const { return a == Axis::X ? var_x : (a == Axis::Y ? var_y : var_z); }
};

/// Per-axis variance after high-pass filtering. Requires a uniform grid.
AxisVarianceReport axis_variances(const ingest::SampleStream& stream, const dsp::FilterSpec& filter);

/// Argmax-variance axis; ties resolve Z, then Y, then X.
Axis select_axis(const AxisVarianceReport& report);

/// Sliding-window RMS of the signal, same length as the input.
VecX rms_envelope(const Eigen::Ref<const VecX>& x, double rate, double window_s);

/// Energy-threshold word-region detection on a filtered single-axis signal.
/// The threshold is noise-relative (median + k * MAD of the envelope), so
/// the result is invariant to positive rescaling of the signal.
std::vector<WordRegion> detect_regions(const Eigen::Ref<const VecX>& x, double rate,
                                       const SegmentParams& params = {}, Axis axis = Axis::Z);

/// Intersection-over-union of two regions.
double region_iou(const WordRegion& a, const WordRegion& b);

/// Region CSV: header start_s,end_s,peak_energy,axis plus one column per
/// entry in `extra` (used for ground-truth labels). All times in seconds.
void write_regions_csv(const std::string& path, const std::vector<WordRegion>& regions, double rate,
                       const std::map<std::string, std::vector<std::string>>& extra = {});

struct RegionFile {
  std::vector<WordRegion> regions;
  std::map<std::string, std::vector<std::string>> extra;  // e.g. label columns
};

RegionFile read_regions_csv(const std::string& path, double rate);

}  // namespace accelspeech::segment
