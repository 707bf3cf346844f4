#include "accelspeech/segment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace accelspeech::segment {

namespace {

double variance(const Eigen::Ref<const VecX>& x) {
  const double mean = x.mean();
  return (x.array() - mean).square().sum() / static_cast<double>(x.size());
}

double median_inplace(std::vector<double>& v) {
  const std::size_t n = v.size();
  auto mid = v.begin() + static_cast<long>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (n % 2 == 1) return *mid;
  auto lo = std::max_element(v.begin(), mid);
  return 0.5 * (*lo + *mid);
}

}  // namespace

AxisVarianceReport axis_variances(const ingest::SampleStream& stream, const dsp::FilterSpec& filter) {
  if (!stream.is_uniform())
    fail(Errc::non_uniform_grid, "stream '" + stream.source_label + "' must be resampled first");
  const double rate = stream.nominal_rate;
  AxisVarianceReport r;
  r.var_x = variance(dsp::highpass(stream.ax, rate, filter));
  r.var_y = variance(dsp::highpass(stream.ay, rate, filter));
  r.var_z = variance(dsp::highpass(stream.az, rate, filter));
  return r;
}

Axis select_axis(const AxisVarianceReport& report) {
  Axis best = Axis::Z;
  for (Axis a : {Axis::Y, Axis::X})
    if (report.of(a) > report.of(best)) best = a;
  return best;
}

VecX rms_envelope(const Eigen::Ref<const VecX>& x, double rate, double window_s) {
  const long n = x.size();
  const long half = std::max<long>(1, static_cast<long>(std::lround(window_s * rate / 2.0)));

  // prefix sums of squares; window clipped at the edges
  VecX csum(n + 1);
  csum[0] = 0.0;
  for (long i = 0; i < n; ++i) csum[i + 1] = csum[i] + x[i] * x[i];

  VecX env(n);
  for (long i = 0; i < n; ++i) {
    const long lo = std::max<long>(0, i - half);
    const long hi = std::min<long>(n, i + half + 1);
    env[i] = std::sqrt((csum[hi] - csum[lo]) / static_cast<double>(hi - lo));
  }
  return env;
}

std::vector<WordRegion> detect_regions(const Eigen::Ref<const VecX>& x, double rate,
                                       const SegmentParams& params, Axis axis) {
  const long n = x.size();
  const long min_len = static_cast<long>(std::lround(params.min_dur_s * rate));
  if (n < std::max<long>(min_len, 4))
    fail(Errc::signal_too_short, "signal of " + std::to_string(n) + " samples is below min_dur");

  const VecX env = rms_envelope(x, rate, params.env_window_s);

  std::vector<double> tmp(env.data(), env.data() + n);
  const double med = median_inplace(tmp);
  for (long i = 0; i < n; ++i) tmp[static_cast<std::size_t>(i)] = std::abs(env[i] - med);
  const double mad = median_inplace(tmp);
  const double threshold = med + params.k_mad * mad;

  // super-threshold runs
  std::vector<WordRegion> runs;
  long run_start = -1;
  for (long i = 0; i <= n; ++i) {
    const bool on = i < n && env[i] > threshold;
    if (on && run_start < 0) run_start = i;
    if (!on && run_start >= 0) {
      runs.push_back({run_start, i, 0.0, axis});
      run_start = -1;
    }
  }

  // merge runs separated by less than merge_gap
  const long gap_len = static_cast<long>(std::lround(params.merge_gap_s * rate));
  std::vector<WordRegion> merged;
  for (const auto& r : runs) {
    if (!merged.empty() && r.start - merged.back().end < gap_len)
      merged.back().end = r.end;
    else
      merged.push_back(r);
  }

  // duration bounds and peak energy
  const long max_len = static_cast<long>(std::lround(params.max_dur_s * rate));
  std::vector<WordRegion> out;
  for (auto r : merged) {
    if (r.end - r.start < min_len) continue;
    if (r.end - r.start > max_len) r.end = r.start + max_len;
    r.peak_energy = env.segment(r.start, r.end - r.start).maxCoeff();
    out.push_back(r);
  }
  return out;
}

double region_iou(const WordRegion& a, const WordRegion& b) {
  const long inter = std::min(a.end, b.end) - std::max(a.start, b.start);
  if (inter <= 0) return 0.0;
  const long uni = std::max(a.end, b.end) - std::min(a.start, b.start);
  return static_cast<double>(inter) / static_cast<double>(uni);
}

void write_regions_csv(const std::string& path, const std::vector<WordRegion>& regions, double rate,
                       const std::map<std::string, std::vector<std::string>>& extra) {
  for (const auto& [name, col] : extra)
    if (col.size() != regions.size())
      fail(Errc::bad_config, "extra column '" + name + "' length mismatch");

  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(Errc::io_error, "cannot write '" + path + "'");
  out << "start_s,end_s,peak_energy,axis";
  for (const auto& [name, col] : extra) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto& r = regions[i];
    out << format_double(r.start / rate) << ',' << format_double(r.end / rate) << ','
        << format_double(r.peak_energy) << ',' << axis_name(r.axis);
    for (const auto& [name, col] : extra) out << ',' << col[i];
    out << '\n';
  }
}

RegionFile read_regions_csv(const std::string& path, double rate) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) fail(Errc::io_error, "empty region file '" + path + "'");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) {
      while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.pop_back();
      header.push_back(f);
    }
  }
  auto idx = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) fail(Errc::missing_column, "'" + name + "' missing in '" + path + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_start = idx("start_s"), c_end = idx("end_s"), c_peak = idx("peak_energy"),
                    c_axis = idx("axis");

  RegionFile out;
  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != c_start && c != c_end && c != c_peak && c != c_axis) out.extra[header[c]] = {};

  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) {
      while (!f.empty() && f.back() == '\r') f.pop_back();
      fields.push_back(f);
    }
    if (fields.size() < header.size())
      fail(Errc::malformed_row, "line " + std::to_string(line_no) + ": field count mismatch");
    double s, e, p;
    if (!try_parse_double(fields[c_start], s) || !try_parse_double(fields[c_end], e) ||
        !try_parse_double(fields[c_peak], p))
      fail(Errc::malformed_row, "line " + std::to_string(line_no) + ": unparseable numeric field");
    WordRegion r;
    r.start = static_cast<long>(std::lround(s * rate));
    r.end = static_cast<long>(std::lround(e * rate));
    r.peak_energy = p;
    r.axis = axis_from_name(fields[c_axis]);
    out.regions.push_back(r);
    for (std::size_t c = 0; c < header.size(); ++c)
      if (auto it = out.extra.find(header[c]); it != out.extra.end()) it->second.push_back(fields[c]);
  }
  return out;
}

}  // namespace accelspeech::segment
