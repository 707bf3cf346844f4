#include "accelspeech/dsp.hpp"

#include "accelspeech/fft.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>

namespace accelspeech::dsp {

namespace {

void check_spec(const FilterSpec& spec, double rate) {
  if (spec.order < 1 || spec.order > 8)
    fail(Errc::bad_config, "filter order must be in [1, 8], got " + std::to_string(spec.order));
  if (!(spec.cutoff_hz > 0.0) || spec.cutoff_hz >= rate / 2.0)
    fail(Errc::cutoff_above_nyquist, "cutoff " + format_double(spec.cutoff_hz) +
                                         " Hz outside (0, " + format_double(rate / 2.0) + ")");
}

/// Steady-state direct-form-II-transposed state of one section for a
/// constant input of 1.
void section_zi(const Biquad& s, double& z1, double& z2) {
  const double h1 = (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
  z1 = h1 - s.b0;
  z2 = s.b2 - s.a2 * h1;
}

VecX sosfilt_zi(const std::vector<Biquad>& sos, const Eigen::Ref<const VecX>& x, double scale) {
  VecX y = x;
  double carry = scale;  // steady input level entering the current section
  for (const auto& s : sos) {
    double z1, z2;
    section_zi(s, z1, z2);
    z1 *= carry;
    z2 *= carry;
    for (long i = 0; i < y.size(); ++i) {
      const double in = y[i];
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      y[i] = out;
    }
    carry *= (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
  }
  return y;
}

}  // namespace

std::vector<Biquad> design_highpass(const FilterSpec& spec, double rate) {
  check_spec(spec, rate);
  const int n = spec.order;
  const double warped = std::tan(M_PI * spec.cutoff_hz / rate);

  // Analog low-pass prototype poles on the unit circle, left half plane;
  // LP->HP maps p to warped/p, the bilinear transform maps to z-plane.
  std::vector<std::complex<double>> zpoles(static_cast<std::size_t>(n));
  std::complex<double> gain(1.0, 0.0);
  for (int k = 0; k < n; ++k) {
    const double theta = M_PI * (2.0 * k + n + 1.0) / (2.0 * n);
    const std::complex<double> p_lp(std::cos(theta), std::sin(theta));
    const std::complex<double> q = warped / p_lp;
    zpoles[static_cast<std::size_t>(k)] = (1.0 + q) / (1.0 - q);
    gain /= (1.0 - q);
  }

  // Conjugate pairs become biquads with a double zero at z = 1; an odd order
  // leaves one real pole paired with a single zero at z = 1.
  std::sort(zpoles.begin(), zpoles.end(), [](const auto& a, const auto& b) {
    if (std::abs(a.imag()) != std::abs(b.imag())) return std::abs(a.imag()) > std::abs(b.imag());
    return a.imag() > b.imag();
  });

  std::vector<Biquad> sos;
  std::size_t i = 0;
  while (i < zpoles.size()) {
    const auto& p = zpoles[i];
    if (std::abs(p.imag()) > 1e-12) {
      sos.push_back({1.0, -2.0, 1.0, -2.0 * p.real(), std::norm(p)});
      i += 2;  // conjugate partner is adjacent after the sort
    } else {
      sos.push_back({1.0, -1.0, 0.0, -p.real(), 0.0});
      i += 1;
    }
  }

  const double g = gain.real();
  sos.front().b0 *= g;
  sos.front().b1 *= g;
  sos.front().b2 *= g;
  return sos;
}

VecX sosfilt(const std::vector<Biquad>& sos, const Eigen::Ref<const VecX>& x) {
  if (x.size() == 0) return VecX();
  return sosfilt_zi(sos, x, x[0]);
}

VecX highpass(const Eigen::Ref<const VecX>& x, double rate, const FilterSpec& spec) {
  auto sos = design_highpass(spec, rate);
  const long n = x.size();
  if (n < 2) fail(Errc::signal_too_short, "highpass needs at least 2 samples");

  const long pad = std::min<long>(n - 1, 3 * (2 * spec.order + 1));

  // odd reflection about both endpoints
  VecX ext(n + 2 * pad);
  for (long i = 0; i < pad; ++i) ext[i] = 2.0 * x[0] - x[pad - i];
  ext.segment(pad, n) = x;
  for (long i = 0; i < pad; ++i) ext[pad + n + i] = 2.0 * x[n - 1] - x[n - 2 - i];

  VecX fwd = sosfilt_zi(sos, ext, ext[0]);
  std::reverse(fwd.data(), fwd.data() + fwd.size());
  VecX bwd = sosfilt_zi(sos, fwd, fwd[0]);
  std::reverse(bwd.data(), bwd.data() + bwd.size());
  return bwd.segment(pad, n);
}

double highpass_gain(const FilterSpec& spec, double rate, double f) {
  check_spec(spec, rate);
  const double w = std::tan(M_PI * f / rate);
  const double wc = std::tan(M_PI * spec.cutoff_hz / rate);
  if (w <= 0.0) return 0.0;
  return 1.0 / std::sqrt(1.0 + std::pow(wc / w, 2.0 * spec.order));
}

VecX hann_window(int n) {
  VecX w(n);
  for (int i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / n);
  return w;
}

Spectrogram stft(const Eigen::Ref<const VecX>& x, double rate, int window_len, int hop) {
  if (window_len < 2 || window_len > x.size())
    fail(Errc::segment_too_short, "signal of " + std::to_string(x.size()) +
                                      " samples cannot fit a " + std::to_string(window_len) +
                                      "-sample window");
  if (hop < 1 || hop > window_len) fail(Errc::bad_config, "hop must be in [1, window_len]");

  const int nfft = next_pow2(window_len);
  const long frames = (x.size() - window_len) / hop + 1;
  const VecX w = hann_window(window_len);

  Spectrogram out;
  out.magnitudes.resize(frames, nfft / 2 + 1);
  out.frame_times.resize(frames);
  out.bin_freqs.resize(nfft / 2 + 1);
  out.window_len = window_len;
  out.hop = hop;
  out.rate = rate;
  for (int k = 0; k <= nfft / 2; ++k) out.bin_freqs[k] = rate * k / nfft;

  for (long fr = 0; fr < frames; ++fr) {
    const long start = fr * hop;
    VecX frame = x.segment(start, window_len).cwiseProduct(w);
    out.magnitudes.row(fr) = magnitude_spectrum(frame, nfft).transpose();
    out.frame_times[fr] = (start + 0.5 * (window_len - 1)) / rate;
  }
  return out;
}

ImageU8 render_image(const Spectrogram& spec, int size) {
  if (spec.magnitudes.size() == 0) fail(Errc::empty_spectrogram, "spectrogram has no frames");
  if (size < 8) fail(Errc::bad_config, "image size must be >= 8");

  const double peak = spec.magnitudes.maxCoeff();
  const long nt = spec.magnitudes.rows(), nf = spec.magnitudes.cols();

  // dB relative to the peak so uniform rescaling of magnitudes cancels
  MatX db(nt, nf);
  if (peak <= 0.0) {
    db.setConstant(-80.0);
  } else {
    for (long t = 0; t < nt; ++t)
      for (long f = 0; f < nf; ++f) {
        const double m = spec.magnitudes(t, f);
        db(t, f) = m <= 0.0 ? -80.0 : std::max(-80.0, 20.0 * std::log10(m / peak));
      }
  }

  const double lo = db.minCoeff(), hi = db.maxCoeff();
  const double span = hi - lo;

  // bilinear resize; image row 0 is the highest frequency
  ImageU8 img(size, size);
  auto src_coord = [](long out_i, int out_n, long in_n) {
    if (out_n <= 1 || in_n <= 1) return 0.0;
    return static_cast<double>(out_i) * static_cast<double>(in_n - 1) / (out_n - 1);
  };
  for (int r = 0; r < size; ++r) {
    const double fc = src_coord(size - 1 - r, size, nf);
    const long f0 = std::min<long>(static_cast<long>(fc), nf - 1);
    const long f1 = std::min<long>(f0 + 1, nf - 1);
    const double wf = fc - f0;
    for (int c = 0; c < size; ++c) {
      const double tc = src_coord(c, size, nt);
      const long t0 = std::min<long>(static_cast<long>(tc), nt - 1);
      const long t1 = std::min<long>(t0 + 1, nt - 1);
      const double wt = tc - t0;
      const double v = (1 - wt) * ((1 - wf) * db(t0, f0) + wf * db(t0, f1)) +
                       wt * ((1 - wf) * db(t1, f0) + wf * db(t1, f1));
      const double norm = span <= 0.0 ? 0.0 : (v - lo) / span;
      img(r, c) = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(norm, 0.0, 1.0)));
    }
  }
  return img;
}

void write_spectrogram_csv(const std::string& path, const Spectrogram& spec) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(Errc::io_error, "cannot write '" + path + "'");
  out << "time_s";
  for (long k = 0; k < spec.bin_freqs.size(); ++k) out << ',' << format_double(spec.bin_freqs[k]);
  out << '\n';
  for (long fr = 0; fr < spec.magnitudes.rows(); ++fr) {
    out << format_double(spec.frame_times[fr]);
    for (long k = 0; k < spec.magnitudes.cols(); ++k) out << ',' << format_double(spec.magnitudes(fr, k));
    out << '\n';
  }
}

AliasPrediction predict_alias(double f, double f_s) {
  if (f < 0.0 || f_s <= 0.0) fail(Errc::bad_config, "need f >= 0 and f_s > 0");
  const double half = f_s / 2.0;
  long best_n = -1;
  double best_fa = std::numeric_limits<double>::infinity();
  const long n_hi = static_cast<long>(std::ceil(f / f_s)) + 1;
  for (long n = 0; n <= n_hi; ++n) {
    const double fa = std::abs(f - static_cast<double>(n) * f_s);
    if (fa <= half && fa < best_fa) {  // ties keep the smaller N
      best_fa = fa;
      best_n = n;
    }
  }
  return {f, f_s, best_n, best_fa};
}

}  // namespace accelspeech::dsp
