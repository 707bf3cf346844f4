#include "accelspeech/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace accelspeech::ingest {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

const VecX& SampleStream::axis(Axis a) const {
  switch (a) {
    case Axis::X: return ax;
    case Axis::Y: return ay;
    default: return az;
  }
}

VecX& SampleStream::axis(Axis a) {
  switch (a) {
    case Axis::X: return ax;
    case Axis::Y: return ay;
    default: return az;
  }
}

bool SampleStream::is_uniform(double tol) const {
  if (size() < 2) return false;
  std::vector<double> dt(static_cast<std::size_t>(size() - 1));
  for (long i = 0; i + 1 < size(); ++i) dt[static_cast<std::size_t>(i)] = timestamps[i + 1] - timestamps[i];
  const double med = median_of(dt);
  for (double d : dt)
    if (std::abs(d - med) > tol * med) return false;
  return true;
}

void finalize(SampleStream& s) {
  const long n = s.size();
  if (n < 2) fail(Errc::too_few_samples, "stream needs at least 2 samples, got " + std::to_string(n));
  if (s.ax.size() != n || s.ay.size() != n || s.az.size() != n)
    fail(Errc::malformed_row, "axis arrays and timestamps differ in length");
  for (long i = 1; i < n; ++i) {
    if (!(s.timestamps[i] > s.timestamps[i - 1]))
      fail(Errc::non_monotonic_timestamps,
           "timestamp at sample " + std::to_string(i) + " does not increase");
  }

  std::vector<double> dt(static_cast<std::size_t>(n - 1));
  for (long i = 0; i + 1 < n; ++i) dt[static_cast<std::size_t>(i)] = s.timestamps[i + 1] - s.timestamps[i];
  const double med = median_of(dt);

  if (s.nominal_rate <= 0.0) s.nominal_rate = static_cast<double>(n - 1) / s.duration();
  const double nominal_dt = 1.0 / s.nominal_rate;
  s.regular = std::abs(med - nominal_dt) <= 0.2 * nominal_dt;
}

SampleStream parse_csv(const std::string& path, const ColumnMapping& schema) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) fail(Errc::too_few_samples, "empty file '" + path + "'");

  auto header = split_row(line);
  for (auto& h : header) h = trim(h);
  auto col = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      fail(Errc::missing_column, "column '" + name + "' not found in '" + path + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t ct = col(schema.time), cx = col(schema.x), cy = col(schema.y), cz = col(schema.z);
  const std::size_t needed = std::max({ct, cx, cy, cz}) + 1;

  std::vector<double> t, x, y, z;
  long line_no = 1;  // 1-based; header was line 1
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_row(line);
    if (fields.size() < needed)
      fail(Errc::malformed_row, "line " + std::to_string(line_no) + ": expected at least " +
                                    std::to_string(needed) + " fields, got " + std::to_string(fields.size()));
    double vt, vx, vy, vz;
    if (!try_parse_double(trim(fields[ct]), vt) || !try_parse_double(trim(fields[cx]), vx) ||
        !try_parse_double(trim(fields[cy]), vy) || !try_parse_double(trim(fields[cz]), vz))
      fail(Errc::malformed_row, "line " + std::to_string(line_no) + ": unparseable numeric field");
    t.push_back(vt);
    x.push_back(vx);
    y.push_back(vy);
    z.push_back(vz);
  }

  SampleStream s;
  s.timestamps = Eigen::Map<VecX>(t.data(), static_cast<long>(t.size()));
  s.ax = Eigen::Map<VecX>(x.data(), static_cast<long>(x.size()));
  s.ay = Eigen::Map<VecX>(y.data(), static_cast<long>(y.size()));
  s.az = Eigen::Map<VecX>(z.data(), static_cast<long>(z.size()));
  s.source_label = path;
  finalize(s);
  return s;
}

void write_csv(const std::string& path, const SampleStream& s, const ColumnMapping& schema) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(Errc::io_error, "cannot write '" + path + "'");
  out << schema.time << ',' << schema.x << ',' << schema.y << ',' << schema.z << '\n';
  for (long i = 0; i < s.size(); ++i) {
    out << format_double(s.timestamps[i]) << ',' << format_double(s.ax[i]) << ','
        << format_double(s.ay[i]) << ',' << format_double(s.az[i]) << '\n';
  }
  if (!out) fail(Errc::io_error, "short write to '" + path + "'");
}

SampleStream resample(const SampleStream& s, double target_rate) {
  if (target_rate <= 0.0) fail(Errc::bad_config, "target rate must be positive");
  if (target_rate > s.nominal_rate * (1.0 + 1e-9))
    fail(Errc::upsampling_requested, "target " + format_double(target_rate) + " Hz exceeds nominal " +
                                         format_double(s.nominal_rate) + " Hz");

  const double t0 = s.timestamps[0];
  const double span = s.duration();
  const double step = 1.0 / target_rate;
  const long m = static_cast<long>(std::floor(span * target_rate * (1.0 + 1e-12))) + 1;

  SampleStream r;
  r.timestamps.resize(m);
  r.ax.resize(m);
  r.ay.resize(m);
  r.az.resize(m);
  r.nominal_rate = target_rate;
  r.source_label = s.source_label;
  r.units = s.units;

  long j = 0;  // left bracket of the interpolation interval
  for (long i = 0; i < m; ++i) {
    const double t = t0 + static_cast<double>(i) * step;
    while (j + 2 < s.size() && s.timestamps[j + 1] <= t) ++j;
    const double t_lo = s.timestamps[j], t_hi = s.timestamps[j + 1];
    const double w = std::clamp((t - t_lo) / (t_hi - t_lo), 0.0, 1.0);
    r.timestamps[i] = t;
    r.ax[i] = s.ax[j] + w * (s.ax[j + 1] - s.ax[j]);
    r.ay[i] = s.ay[j] + w * (s.ay[j + 1] - s.ay[j]);
    r.az[i] = s.az[j] + w * (s.az[j + 1] - s.az[j]);
  }
  finalize(r);
  return r;
}

}  // namespace accelspeech::ingest
