#pragma once

#include "accelspeech/common.hpp"

#include <string>

namespace accelspeech::ingest {

/// Column-name remapping for accelerometer CSV exports. Defaults follow the
/// Physics Toolbox convention (time, ax, ay, az).
struct ColumnMapping {
  std::string time = "time";
  std::string x = "ax";
  std::string y = "ay";
  std::string z = "az";
};

/// Timestamped 3-axis accelerometer trace.
///
/// `units` is opaque metadata (exports may be in g or m/s^2); downstream
/// math never converts. `regular` records whether the median inter-sample
/// interval is within +-20% of 1/nominal_rate.
struct SampleStream {
  VecX timestamps;  // seconds, strictly increasing
  VecX ax, ay, az;
  double nominal_rate = 0.0;  // Hz
  std::string source_label;
  std::string units = "m/s^2";
  bool regular = true;

  long size() const { return timestamps.size(); }
  double duration() const { return timestamps[size() - 1] - timestamps[0]; }
  const VecX& axis(Axis a) const;
  VecX& axis(Axis a);

  /// True when every inter-sample interval is within `tol` (relative) of the
  /// median interval. DSP stages require this; resample() is the bridge.
  bool is_uniform(double tol = 0.05) const;
};

/// Validate invariants and derive nominal_rate/regular from the timestamps.
/// Throws on violated stream invariants.
void finalize(SampleStream& s);

SampleStream parse_csv(const std::string& path, const ColumnMapping& schema = {});

void write_csv(const std::string& path, const SampleStream& s,
               const ColumnMapping& schema = {});

/// Linear-interpolation resampling onto a uniform grid at target_rate
/// (down-sampling only). Duration is preserved within one sample period.
SampleStream resample(const SampleStream& s, double target_rate);

}  // namespace accelspeech::ingest
