#include "speechml/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "speechml/errors.hpp"

namespace speechml {

namespace {

using cplx = std::complex<double>;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) {
    p <<= 1;
  }
  return p;
}

// Iterative radix-2 Cooley-Tukey. len must be a power of two.
void fft_pow2(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) {
      j ^= bit;
    }
    j ^= bit;
    if (i < j) {
      std::swap(a[i], a[j]);
    }
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang =
        (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx w = std::polar(1.0, ang * static_cast<double>(k));
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& x : a) {
      x *= inv;
    }
  }
}

// Bluestein's chirp-z reformulation for arbitrary lengths. The chirp phase is
// reduced with (n*n mod 2N) so large-index trigonometry stays accurate.
struct ChirpPlan {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<cplx> chirp;     // e^{-i pi n^2 / N}
  std::vector<cplx> b_spec;    // FFT of the conjugate chirp kernel

  explicit ChirpPlan(std::size_t len) : n(len), m(next_pow2(2 * len - 1)) {
    chirp.resize(n);
    std::vector<cplx> b(m, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      const auto reduced = static_cast<double>((i * i) % (2 * n));
      const double phase = std::numbers::pi * reduced / static_cast<double>(n);
      chirp[i] = std::polar(1.0, -phase);
      b[i] = std::conj(chirp[i]);
      if (i != 0) {
        b[m - i] = b[i];
      }
    }
    fft_pow2(b, false);
    b_spec = std::move(b);
  }

  std::vector<cplx> transform(std::span<const double> x) const {
    std::vector<cplx> a(m, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = x[i] * chirp[i];
    }
    fft_pow2(a, false);
    for (std::size_t i = 0; i < m; ++i) {
      a[i] *= b_spec[i];
    }
    fft_pow2(a, true);
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
      out[k] = a[k] * chirp[k];
    }
    return out;
  }
};

const ChirpPlan& plan_for(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<ChirpPlan>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<ChirpPlan>(n)).first;
  }
  return *it->second;
}

}  // namespace

double mel_from_hz(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double hz_from_mel(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

std::vector<cplx> dft_forward(std::span<const double> x) {
  if (x.empty()) {
    throw EmptyInput("dft_forward: empty frame");
  }
  const std::size_t n = x.size();
  if (n == 1) {
    return {cplx(x[0], 0.0)};
  }
  if (is_pow2(n)) {
    std::vector<cplx> a(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = cplx(x[i], 0.0);
    }
    fft_pow2(a, false);
    return a;
  }
  return plan_for(n).transform(x);
}

MagnitudeSpectrum magnitude_spectrum(std::span<const double> frame,
                                     int sample_rate) {
  const auto spec = dft_forward(frame);
  MagnitudeSpectrum out;
  out.bin_hz = static_cast<double>(sample_rate) /
               static_cast<double>(frame.size());
  out.bins.resize(frame.size() / 2 + 1);
  for (std::size_t k = 0; k < out.bins.size(); ++k) {
    out.bins[k] = std::abs(spec[k]);
  }
  return out;
}

MelFilterbank build_mel_filterbank(int sample_rate, std::size_t frame_len,
                                   int n_filters) {
  if (n_filters < 14) {
    throw InvalidArgument("build_mel_filterbank: need at least 14 filters");
  }
  if (frame_len == 0 || sample_rate <= 0) {
    throw InvalidArgument("build_mel_filterbank: bad frame_len/sample_rate");
  }

  MelFilterbank fb;
  fb.n_filters = n_filters;
  fb.n_bins = frame_len / 2 + 1;
  fb.weights.assign(static_cast<std::size_t>(n_filters) * fb.n_bins, 0.0);
  fb.edges.resize(n_filters);

  const double nyquist = sample_rate / 2.0;
  const double mel_max = mel_from_hz(nyquist);
  const double bin_hz = static_cast<double>(sample_rate) /
                        static_cast<double>(frame_len);

  // n_filters + 2 equally spaced mel points; filter i spans points i..i+2.
  std::vector<double> hz(n_filters + 2);
  for (int j = 0; j < n_filters + 2; ++j) {
    hz[j] = hz_from_mel(mel_max * j / (n_filters + 1));
  }

  for (int i = 0; i < n_filters; ++i) {
    const double left = hz[i];
    const double center = hz[i + 1];
    const double right = hz[i + 2];
    fb.edges[i] = {left, center, right};
    double* row = fb.weights.data() + static_cast<std::size_t>(i) * fb.n_bins;
    for (std::size_t k = 0; k < fb.n_bins; ++k) {
      const double f = bin_hz * static_cast<double>(k);
      if (f <= left || f >= right) {
        continue;
      }
      row[k] = f <= center ? (f - left) / (center - left)
                           : (right - f) / (right - center);
    }
  }
  return fb;
}

std::vector<double> dct2_orthonormal(std::span<const double> v) {
  if (v.empty()) {
    throw EmptyInput("dct2_orthonormal: empty vector");
  }
  const std::size_t n = v.size();
  const double norm0 = std::sqrt(1.0 / static_cast<double>(n));
  const double norm = std::sqrt(2.0 / static_cast<double>(n));
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += v[i] * std::cos(std::numbers::pi * (i + 0.5) * j /
                             static_cast<double>(n));
    }
    out[j] = acc * (j == 0 ? norm0 : norm);
  }
  return out;
}

std::vector<double> apply_filterbank(const MelFilterbank& fb,
                                     const MagnitudeSpectrum& spec) {
  if (spec.bins.size() != fb.n_bins) {
    throw BinMismatch("apply_filterbank: spectrum has " +
                      std::to_string(spec.bins.size()) + " bins, filterbank " +
                      std::to_string(fb.n_bins));
  }
  std::vector<double> out(fb.n_filters, 0.0);
  for (int i = 0; i < fb.n_filters; ++i) {
    const double* row =
        fb.weights.data() + static_cast<std::size_t>(i) * fb.n_bins;
    double acc = 0.0;
    for (std::size_t k = 0; k < fb.n_bins; ++k) {
      acc += row[k] * spec.bins[k];
    }
    out[i] = acc;
  }
  return out;
}

PitchEstimate estimate_pitch(std::span<const double> frame, int sample_rate,
                             const PitchParams& params) {
  if (!(params.f_min_hz > 0.0) || params.f_max_hz <= params.f_min_hz) {
    throw InvalidArgument("estimate_pitch: need 0 < f_min < f_max");
  }
  const auto len = frame.size();
  const double min_period = 2.0 * sample_rate / params.f_min_hz;
  if (static_cast<double>(len) < min_period) {
    throw InvalidArgument(
        "estimate_pitch: frame covers fewer than two periods of f_min");
  }

  PitchEstimate est;

  double r0 = 0.0;
  for (double s : frame) {
    r0 += s * s;
  }
  const double mean_square = r0 / static_cast<double>(len);
  if (mean_square < kSilenceFloorMeanSquare) {
    return est;  // unvoiced, confidence 0
  }

  const auto lag_min = static_cast<std::size_t>(
      std::ceil(sample_rate / params.f_max_hz));
  const auto lag_max = std::min(
      static_cast<std::size_t>(std::floor(sample_rate / params.f_min_hz)),
      len - 1);

  double best = 0.0;
  std::size_t best_lag = 0;
  for (std::size_t lag = lag_min; lag <= lag_max; ++lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < len; ++i) {
      acc += frame[i] * frame[i + lag];
    }
    const double r = acc / r0;
    if (r > best) {
      best = r;
      best_lag = lag;
    }
  }

  est.confidence = std::clamp(best, 0.0, 1.0);
  if (best_lag != 0 && est.confidence >= params.voicing_threshold) {
    est.voiced = true;
    est.f0_hz = static_cast<double>(sample_rate) /
                static_cast<double>(best_lag);
  }
  return est;
}

}  // namespace speechml
