#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace accelspeech {

using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;
using MatXi = Eigen::MatrixXi;
using ImageU8 = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

enum class Errc {
  missing_column,
  non_monotonic_timestamps,
  too_few_samples,
  malformed_row,
  upsampling_requested,
  cutoff_above_nyquist,
  non_uniform_grid,
  segment_too_short,
  signal_too_short,
  empty_spectrogram,
  region_too_short,
  non_finite_feature,
  class_too_small,
  empty_matrix,
  non_finite_input,
  bad_duration,
  bad_config,
  io_error,
};

const char* errc_name(Errc c);

/// Exception carrying a stable error code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& msg);

enum class Axis { X = 0, Y = 1, Z = 2 };

const char* axis_name(Axis a);
Axis axis_from_name(std::string_view name);

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

/// Strict parse of a full token; returns false on any trailing garbage.
bool try_parse_double(std::string_view text, double& out);

int next_pow2(int n);

}  // namespace accelspeech
