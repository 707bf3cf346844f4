#include "accelspeech/features.hpp"

#include "accelspeech/fft.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace accelspeech::features {

const std::array<std::string, kNumFeatures>& feature_names() {
  static const std::array<std::string, kNumFeatures> names = {
      "min", "max", "mean", "std", "variance", "range", "cv", "skewness", "kurtosis",
      "q25", "q50", "q85", "mean_crossing_rate",
      "energy", "entropy", "freq_ratio", "irregularity_k", "irregularity_j", "sharpness",
      "smoothness", "spec_centroid", "spec_stddev", "spec_crest", "spec_skewness", "spec_kurtosis"};
  return names;
}

namespace {

double quantile(std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  const double pos = p * static_cast<double>(n - 1);  // 0-based position
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

Vec13 time_features(const Eigen::Ref<const VecX>& x) {
  const long n = x.size();
  if (n < 4) fail(Errc::region_too_short, "time features need >= 4 samples, got " + std::to_string(n));

  const double mean = x.mean();
  const double vmin = x.minCoeff();
  const double vmax = x.maxCoeff();

  double m2 = 0, m3 = 0, m4 = 0;
  for (long i = 0; i < n; ++i) {
    const double d = x[i] - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;

  const double sd = std::sqrt(m2);
  const double skew = m2 < 1e-24 ? 0.0 : m3 / std::pow(m2, 1.5);
  const double kurt = m2 < 1e-24 ? 0.0 : m4 / (m2 * m2);

  std::vector<double> sorted(x.data(), x.data() + n);
  std::sort(sorted.begin(), sorted.end());

  long crossings = 0;  // strict sign changes of x - mean over adjacent pairs
  for (long i = 0; i + 1 < n; ++i) {
    const double a = x[i] - mean, b = x[i + 1] - mean;
    if ((a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0)) ++crossings;
  }

  Vec13 out;
  out << vmin, vmax, mean, sd, m2, vmax - vmin, sd / (std::abs(mean) + 1e-12), skew, kurt,
      quantile(sorted, 0.25), quantile(sorted, 0.50), quantile(sorted, 0.85),
      static_cast<double>(crossings) / static_cast<double>(n - 1);
  return out;
}

Vec12 freq_features_of_spectrum(const Eigen::Ref<const VecX>& mags, const Eigen::Ref<const VecX>& freqs) {
  const long k_count = mags.size();
  if (k_count < 2 || freqs.size() != k_count)
    fail(Errc::region_too_short, "spectrum needs >= 2 bins with matching frequencies");

  const double sum_m = mags.sum();
  const double energy = mags.squaredNorm();
  const double rate_quarter = freqs[k_count - 1] / 2.0;  // freqs span (0, rate/2]

  double entropy = 0.0;
  if (energy > 0.0) {
    for (long k = 0; k < k_count; ++k) {
      const double p = mags[k] * mags[k] / energy;
      if (p > 0.0) entropy -= p * std::log2(p);
    }
    entropy /= std::log2(static_cast<double>(k_count));
  }

  double upper = 0.0;
  for (long k = 0; k < k_count; ++k)
    if (freqs[k] > rate_quarter) upper += mags[k] * mags[k];
  const double freq_ratio = energy > 0.0 ? upper / energy : 0.0;

  double irr_k = 0.0;
  for (long k = 1; k + 1 < k_count; ++k)
    irr_k += std::abs(mags[k] - (mags[k - 1] + mags[k] + mags[k + 1]) / 3.0);

  double irr_j_num = 0.0;
  for (long k = 0; k + 1 < k_count; ++k) irr_j_num += (mags[k] - mags[k + 1]) * (mags[k] - mags[k + 1]);
  const double irr_j = energy > 0.0 ? irr_j_num / energy : 0.0;

  double sharpness = 0.0;
  if (sum_m > 0.0) {
    for (long k = 0; k < k_count; ++k)
      sharpness += std::pow(static_cast<double>(k + 1) / static_cast<double>(k_count), 0.23) * mags[k];
    sharpness /= sum_m;
  }

  double smoothness = 0.0;
  {
    VecX level(k_count);
    for (long k = 0; k < k_count; ++k) level[k] = 20.0 * std::log10(mags[k] + 1e-12);
    for (long k = 1; k + 1 < k_count; ++k)
      smoothness += std::abs(level[k] - (level[k - 1] + level[k] + level[k + 1]) / 3.0);
  }

  double centroid = 0.0, spread = 0.0, sskew = 0.0, skurt = 0.0, crest = 0.0;
  if (sum_m > 0.0) {
    centroid = freqs.dot(mags) / sum_m;
    double v2 = 0, v3 = 0, v4 = 0;
    for (long k = 0; k < k_count; ++k) {
      const double d = freqs[k] - centroid;
      v2 += d * d * mags[k];
      v3 += d * d * d * mags[k];
      v4 += d * d * d * d * mags[k];
    }
    v2 /= sum_m;
    v3 /= sum_m;
    v4 /= sum_m;
    spread = std::sqrt(v2);
    if (v2 > 1e-24) {
      sskew = v3 / std::pow(v2, 1.5);
      skurt = v4 / (v2 * v2);
    }
    crest = mags.maxCoeff() / (sum_m / static_cast<double>(k_count));
  }

  Vec12 out;
  out << energy, entropy, freq_ratio, irr_k, irr_j, sharpness, smoothness, centroid, spread, crest,
      sskew, skurt;
  return out;
}

Vec12 freq_features(const Eigen::Ref<const VecX>& x, double rate) {
  const long n = x.size();
  if (n < 8) fail(Errc::region_too_short, "freq features need >= 8 samples, got " + std::to_string(n));

  const int nfft = next_pow2(static_cast<int>(n));
  const VecX w = dsp::hann_window(static_cast<int>(n));
  const VecX frame = (x.array() - x.mean()).matrix().cwiseProduct(w);
  const VecX mag = magnitude_spectrum(frame, nfft);

  const long k_count = nfft / 2;  // bins 1..nfft/2, DC excluded
  VecX mags(k_count), freqs(k_count);
  for (long k = 1; k <= k_count; ++k) {
    mags[k - 1] = mag[k];
    freqs[k - 1] = rate * static_cast<double>(k) / nfft;
  }
  return freq_features_of_spectrum(mags, freqs);
}

std::vector<FeatureVector> extract_all(const ingest::SampleStream& stream,
                                       const std::vector<segment::WordRegion>& regions,
                                       const ExtractConfig& config,
                                       const std::vector<std::string>& labels) {
  if (!labels.empty() && labels.size() != regions.size())
    fail(Errc::bad_config, "labels must parallel regions");

  // filter each axis once, lazily
  std::array<VecX, 3> filtered;
  std::array<bool, 3> have = {false, false, false};
  auto axis_signal = [&](Axis a) -> const VecX& {
    auto i = static_cast<std::size_t>(a);
    if (!have[i]) {
      if (!stream.is_uniform())
        fail(Errc::non_uniform_grid, "stream '" + stream.source_label + "' must be resampled first");
      filtered[i] = config.apply_filter
                        ? dsp::highpass(stream.axis(a), stream.nominal_rate, config.filter)
                        : stream.axis(a);
      have[i] = true;
    }
    return filtered[i];
  };

  std::vector<FeatureVector> out;
  out.reserve(regions.size());
  for (std::size_t ri = 0; ri < regions.size(); ++ri) {
    const auto& r = regions[ri];
    const VecX& sig = axis_signal(r.axis);
    if (r.start < 0 || r.end > sig.size() || r.start >= r.end)
      fail(Errc::bad_config, "region " + std::to_string(ri) + " out of stream bounds");
    const auto slice = sig.segment(r.start, r.end - r.start);

    FeatureVector fv;
    fv.values.head<kNumTime>() = time_features(slice);
    fv.values.tail<kNumFreq>() = freq_features(slice, stream.nominal_rate);
    fv.region_id = static_cast<long>(ri);
    fv.label = labels.empty() ? "" : labels[ri];

    for (int j = 0; j < kNumFeatures; ++j)
      if (!std::isfinite(fv.values[j]))
        fail(Errc::non_finite_feature,
             "region " + std::to_string(ri) + ", feature '" + feature_names()[static_cast<std::size_t>(j)] + "'");
    out.push_back(std::move(fv));
  }
  return out;
}

void write_features_csv(const std::string& path, const std::vector<FeatureVector>& vectors) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(Errc::io_error, "cannot write '" + path + "'");
  const auto& names = feature_names();
  for (int j = 0; j < kNumFeatures; ++j) out << names[static_cast<std::size_t>(j)] << ',';
  out << "label,region_id\n";
  for (const auto& fv : vectors) {
    for (int j = 0; j < kNumFeatures; ++j) out << format_double(fv.values[j]) << ',';
    out << fv.label << ',' << fv.region_id << '\n';
  }
}

std::vector<FeatureVector> read_features_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) fail(Errc::io_error, "empty feature file '" + path + "'");

  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) {
      while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.pop_back();
      header.push_back(f);
    }
  }
  const auto& names = feature_names();
  std::array<std::size_t, kNumFeatures> fcol;
  for (int j = 0; j < kNumFeatures; ++j) {
    auto it = std::find(header.begin(), header.end(), names[static_cast<std::size_t>(j)]);
    if (it == header.end())
      fail(Errc::missing_column, "feature '" + names[static_cast<std::size_t>(j)] + "' missing in '" + path + "'");
    fcol[static_cast<std::size_t>(j)] = static_cast<std::size_t>(it - header.begin());
  }
  auto lbl_it = std::find(header.begin(), header.end(), "label");
  if (lbl_it == header.end()) fail(Errc::missing_column, "'label' missing in '" + path + "'");
  const auto c_label = static_cast<std::size_t>(lbl_it - header.begin());
  auto rid_it = std::find(header.begin(), header.end(), "region_id");
  if (rid_it == header.end()) fail(Errc::missing_column, "'region_id' missing in '" + path + "'");
  const auto c_rid = static_cast<std::size_t>(rid_it - header.begin());

  std::vector<FeatureVector> out;
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
    FeatureVector fv;
    for (int j = 0; j < kNumFeatures; ++j) {
      if (!try_parse_double(fields[fcol[static_cast<std::size_t>(j)]], fv.values[j]))
        fail(Errc::malformed_row, "line " + std::to_string(line_no) + ": unparseable feature value");
    }
    fv.label = fields[c_label];
    double rid;
    if (!try_parse_double(fields[c_rid], rid))
      fail(Errc::malformed_row, "line " + std::to_string(line_no) + ": unparseable region_id");
    fv.region_id = static_cast<long>(rid);
    out.push_back(std::move(fv));
  }
  return out;
}

}  // namespace accelspeech::features
