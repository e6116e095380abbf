#pragma once

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "speechml/audio.hpp"
#include "speechml/dataset.hpp"
#include "speechml/rng.hpp"

namespace testsupport {

inline std::vector<double> sine(double freq_hz, int sample_rate,
                                std::size_t len, double amplitude = 1.0,
                                double phase = 0.0) {
  std::vector<double> out(len);
  for (std::size_t n = 0; n < len; ++n) {
    out[n] = amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * n /
                                      sample_rate +
                                  phase);
  }
  return out;
}

inline std::vector<double> sawtooth(double freq_hz, int sample_rate,
                                    std::size_t len, double amplitude = 0.5) {
  std::vector<double> out(len);
  const double period = sample_rate / freq_hz;
  for (std::size_t n = 0; n < len; ++n) {
    const double u = std::fmod(static_cast<double>(n), period) / period;
    out[n] = amplitude * (2.0 * u - 1.0);
  }
  return out;
}

inline std::vector<double> white_noise(std::size_t len, std::uint64_t seed,
                                       double amplitude = 0.3) {
  speechml::Rng rng(seed);
  std::vector<double> out(len);
  for (double& s : out) {
    s = amplitude * speechml::next_normal(rng);
  }
  return out;
}

// Harmonic vowel-like burst under a raised-cosine envelope, as the prosody
// extractors expect of voiced speech.
inline std::vector<double> vowel_burst(double f0_hz, int sample_rate,
                                       std::size_t len,
                                       double amplitude = 0.6) {
  std::vector<double> out(len);
  double theta = 0.0;
  for (std::size_t n = 0; n < len; ++n) {
    theta += 2.0 * std::numbers::pi * f0_hz / sample_rate;
    const double u = len > 1 ? static_cast<double>(n) /
                                   static_cast<double>(len - 1)
                             : 0.5;
    const double env = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * u));
    const double h = std::sin(theta) + 0.5 * std::sin(2.0 * theta) +
                     0.25 * std::sin(3.0 * theta) +
                     0.125 * std::sin(4.0 * theta);
    out[n] = amplitude * env * h / 1.875;
  }
  return out;
}

// Harmonic burst with a flat top and short (10 ms) raised-cosine edges, so
// the loud region ends where the burst ends.
inline std::vector<double> plateau_burst(double f0_hz, int sample_rate,
                                         std::size_t len,
                                         double amplitude = 0.6) {
  std::vector<double> out(len);
  const auto ramp = static_cast<std::size_t>(0.01 * sample_rate);
  double theta = 0.0;
  for (std::size_t n = 0; n < len; ++n) {
    theta += 2.0 * std::numbers::pi * f0_hz / sample_rate;
    double env = 1.0;
    if (n < ramp) {
      env = 0.5 * (1.0 - std::cos(std::numbers::pi * n / ramp));
    } else if (len - 1 - n < ramp) {
      env = 0.5 * (1.0 - std::cos(std::numbers::pi * (len - 1 - n) / ramp));
    }
    const double h = std::sin(theta) + 0.5 * std::sin(2.0 * theta) +
                     0.25 * std::sin(3.0 * theta) +
                     0.125 * std::sin(4.0 * theta);
    out[n] = amplitude * env * h / 1.875;
  }
  return out;
}

inline void append_silence(std::vector<double>& samples, double seconds,
                           int sample_rate) {
  samples.insert(samples.end(),
                 static_cast<std::size_t>(std::lround(seconds * sample_rate)),
                 0.0);
}

inline speechml::AudioSignal burst_clip(int n_bursts, double gap_s,
                                        int sample_rate, double f0_hz = 150.0,
                                        double burst_s = 0.15,
                                        double amplitude = 0.6) {
  speechml::AudioSignal sig;
  sig.sample_rate = sample_rate;
  append_silence(sig.samples, 0.1, sample_rate);
  const auto burst_len =
      static_cast<std::size_t>(std::lround(burst_s * sample_rate));
  for (int b = 0; b < n_bursts; ++b) {
    if (b > 0) {
      append_silence(sig.samples, gap_s, sample_rate);
    }
    const auto burst = vowel_burst(f0_hz, sample_rate, burst_len, amplitude);
    sig.samples.insert(sig.samples.end(), burst.begin(), burst.end());
  }
  append_silence(sig.samples, 0.1, sample_rate);
  return sig;
}

// O(N^2) reference DFT.
inline std::vector<std::complex<double>> direct_dft(
    std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) *
                         static_cast<double>(i) / static_cast<double>(n);
      acc += x[i] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

struct RootSplit {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double total_sse = 0.0;
};

// Exhaustive (feature, threshold) search minimizing weighted SSE, with the
// same tie rule as the implementation: first feature, then first threshold.
inline RootSplit brute_force_root_split(const speechml::DataMatrix& x,
                                        std::span<const double> y,
                                        std::span<const double> w,
                                        int min_leaf = 1) {
  RootSplit best;
  best.total_sse = std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < x.cols; ++f) {
    std::vector<double> values;
    for (std::size_t i = 0; i < x.rows; ++i) {
      values.push_back(x.at(i, f));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t v = 0; v + 1 < values.size(); ++v) {
      const double threshold = (values[v] + values[v + 1]) / 2.0;
      double wl = 0.0, wr = 0.0, ml = 0.0, mr = 0.0;
      int nl = 0, nr = 0;
      for (std::size_t i = 0; i < x.rows; ++i) {
        if (x.at(i, f) <= threshold) {
          wl += w[i];
          ml += w[i] * y[i];
          ++nl;
        } else {
          wr += w[i];
          mr += w[i] * y[i];
          ++nr;
        }
      }
      if (nl < min_leaf || nr < min_leaf || wl <= 0.0 || wr <= 0.0) {
        continue;
      }
      ml /= wl;
      mr /= wr;
      double sse = 0.0;
      for (std::size_t i = 0; i < x.rows; ++i) {
        const double m = x.at(i, f) <= threshold ? ml : mr;
        sse += w[i] * (y[i] - m) * (y[i] - m);
      }
      if (sse < best.total_sse) {
        best.found = true;
        best.feature = static_cast<int>(f);
        best.threshold = threshold;
        best.total_sse = sse;
      }
    }
  }
  return best;
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("speechml_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

// Raw WAV bytes for crafting malformed files in tests.
struct WavBytes {
  std::vector<std::uint8_t> bytes;

  void u16(std::uint16_t v) {
    bytes.push_back(static_cast<std::uint8_t>(v & 0xff));
    bytes.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    u16(static_cast<std::uint16_t>(v & 0xffff));
    u16(static_cast<std::uint16_t>(v >> 16));
  }
  void tag(const char* t) { bytes.insert(bytes.end(), t, t + 4); }

  static WavBytes pcm16(std::uint16_t channels, std::uint32_t sample_rate,
                        const std::vector<std::int16_t>& interleaved,
                        std::uint16_t bits = 16, std::uint16_t format = 1) {
    WavBytes w;
    const auto data_size =
        static_cast<std::uint32_t>(interleaved.size() * 2);
    w.tag("RIFF");
    w.u32(36 + data_size);
    w.tag("WAVE");
    w.tag("fmt ");
    w.u32(16);
    w.u16(format);
    w.u16(channels);
    w.u32(sample_rate);
    w.u32(sample_rate * channels * 2);
    w.u16(static_cast<std::uint16_t>(channels * 2));
    w.u16(bits);
    w.tag("data");
    w.u32(data_size);
    for (std::int16_t s : interleaved) {
      w.u16(static_cast<std::uint16_t>(s));
    }
    return w;
  }

  void write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
  }
};

}  // namespace testsupport
