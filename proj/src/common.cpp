#include "accelspeech/common.hpp"

#include <charconv>

namespace accelspeech {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::missing_column: return "MissingColumn";
    case Errc::non_monotonic_timestamps: return "NonMonotonicTimestamps";
    case Errc::too_few_samples: return "TooFewSamples";
    case Errc::malformed_row: return "MalformedRow";
    case Errc::upsampling_requested: return "UpsamplingRequested";
    case Errc::cutoff_above_nyquist: return "CutoffAboveNyquist";
    case Errc::non_uniform_grid: return "NonUniformGrid";
    case Errc::segment_too_short: return "SegmentTooShort";
    case Errc::signal_too_short: return "SignalTooShort";
    case Errc::empty_spectrogram: return "EmptySpectrogram";
    case Errc::region_too_short: return "RegionTooShort";
    case Errc::non_finite_feature: return "NonFiniteFeature";
    case Errc::class_too_small: return "ClassTooSmall";
    case Errc::empty_matrix: return "EmptyMatrix";
    case Errc::non_finite_input: return "NonFiniteInput";
    case Errc::bad_duration: return "BadDuration";
    case Errc::bad_config: return "BadConfig";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

Error::Error(Errc code, const std::string& msg)
    : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "X";
    case Axis::Y: return "Y";
    case Axis::Z: return "Z";
  }
  return "?";
}

Axis axis_from_name(std::string_view name) {
  if (name == "X" || name == "x") return Axis::X;
  if (name == "Y" || name == "y") return Axis::Y;
  if (name == "Z" || name == "z") return Axis::Z;
  fail(Errc::malformed_row, "unknown axis name '" + std::string(name) + "'");
}

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool try_parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  // from_chars rejects a leading '+', which CSV exports occasionally carry
  if (text.front() == '+') text.remove_prefix(1);
  auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace accelspeech
