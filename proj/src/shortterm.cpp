#include "speechml/shortterm.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "speechml/errors.hpp"

namespace speechml {

namespace {

double log2_floored(double x) { return std::log2(std::max(x, kLogFloor)); }

// Entropy in bits of a nonnegative vector after sum-normalization; returns 0
// when the total is zero.
double normalized_entropy_bits(std::span<const double> parts) {
  double total = 0.0;
  for (double p : parts) {
    total += p;
  }
  if (total <= 0.0) {
    return 0.0;
  }
  double h = 0.0;
  for (double p : parts) {
    const double e = p / total;
    if (e > 0.0) {
      h -= e * log2_floored(e);
    }
  }
  return std::max(h, 0.0);
}

}  // namespace

double zero_crossing_rate(std::span<const double> frame) {
  if (frame.size() < 2) {
    throw InvalidArgument("zero_crossing_rate: frame length must be >= 2");
  }
  std::size_t crossings = 0;
  bool prev_nonneg = frame[0] >= 0.0;
  for (std::size_t i = 1; i < frame.size(); ++i) {
    const bool nonneg = frame[i] >= 0.0;
    crossings += nonneg != prev_nonneg;
    prev_nonneg = nonneg;
  }
  return static_cast<double>(crossings) /
         static_cast<double>(frame.size() - 1);
}

double short_energy(std::span<const double> frame) {
  if (frame.empty()) {
    throw EmptyInput("short_energy: empty frame");
  }
  double acc = 0.0;
  for (double s : frame) {
    acc += s * s;
  }
  return acc / static_cast<double>(frame.size());
}

double energy_entropy(std::span<const double> frame, int n_sub) {
  if (n_sub < 2) {
    throw InvalidArgument("energy_entropy: need n_sub >= 2");
  }
  if (frame.empty()) {
    throw EmptyInput("energy_entropy: empty frame");
  }
  const std::size_t sub_len =
      (frame.size() + static_cast<std::size_t>(n_sub) - 1) /
      static_cast<std::size_t>(n_sub);
  std::vector<double> sub_energy;
  sub_energy.reserve(static_cast<std::size_t>(n_sub));
  for (std::size_t start = 0; start < frame.size(); start += sub_len) {
    const std::size_t end = std::min(start + sub_len, frame.size());
    double acc = 0.0;
    for (std::size_t i = start; i < end; ++i) {
      acc += frame[i] * frame[i];
    }
    sub_energy.push_back(acc);
  }
  return normalized_entropy_bits(sub_energy);
}

std::pair<double, double> spectral_centroid_spread(
    const MagnitudeSpectrum& spec) {
  double total = 0.0, weighted = 0.0;
  for (std::size_t k = 0; k < spec.bins.size(); ++k) {
    total += spec.bins[k];
    weighted += spec.freq(k) * spec.bins[k];
  }
  if (total <= 0.0) {
    return {0.0, 0.0};
  }
  const double centroid = weighted / total;
  double var = 0.0;
  for (std::size_t k = 0; k < spec.bins.size(); ++k) {
    const double d = spec.freq(k) - centroid;
    var += d * d * spec.bins[k];
  }
  return {centroid, std::sqrt(var / total)};
}

double spectral_rolloff(const MagnitudeSpectrum& spec, double c) {
  if (!(c > 0.0) || !(c < 1.0)) {
    throw InvalidArgument("spectral_rolloff: c must be in (0, 1)");
  }
  double total = 0.0;
  for (double b : spec.bins) {
    total += b * b;
  }
  if (total <= 0.0) {
    return 0.0;
  }
  const double target = c * total;
  double acc = 0.0;
  for (std::size_t k = 0; k < spec.bins.size(); ++k) {
    acc += spec.bins[k] * spec.bins[k];
    if (acc >= target) {
      return spec.freq(k);
    }
  }
  return spec.top_hz();  // numeric slack: cumulative never reached target
}

double spectral_flux(const MagnitudeSpectrum& cur,
                     const MagnitudeSpectrum& prev) {
  if (cur.bins.size() != prev.bins.size()) {
    throw BinMismatch("spectral_flux: bin counts differ (" +
                      std::to_string(cur.bins.size()) + " vs " +
                      std::to_string(prev.bins.size()) + ")");
  }
  const std::size_t n = cur.bins.size();
  double sum_cur = 0.0, sum_prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sum_cur += cur.bins[k];
    sum_prev += prev.bins[k];
  }
  const double uniform = 1.0 / static_cast<double>(n);
  double flux = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double p = sum_cur > 0.0 ? cur.bins[k] / sum_cur : uniform;
    const double q = sum_prev > 0.0 ? prev.bins[k] / sum_prev : uniform;
    flux += (p - q) * (p - q);
  }
  return flux;
}

double spectral_entropy(const MagnitudeSpectrum& spec, int n_bands) {
  if (n_bands < 2) {
    throw InvalidArgument("spectral_entropy: need n_bands >= 2");
  }
  const std::size_t n = spec.bins.size();
  const std::size_t band_len =
      (n + static_cast<std::size_t>(n_bands) - 1) /
      static_cast<std::size_t>(n_bands);
  std::vector<double> band_energy;
  band_energy.reserve(static_cast<std::size_t>(n_bands));
  for (std::size_t start = 0; start < n; start += band_len) {
    const std::size_t end = std::min(start + band_len, n);
    double acc = 0.0;
    for (std::size_t k = start; k < end; ++k) {
      acc += spec.bins[k] * spec.bins[k];
    }
    band_energy.push_back(acc);
  }
  return normalized_entropy_bits(band_energy);
}

std::array<double, kNumMfcc> mfcc(const MagnitudeSpectrum& spec,
                                  const MelFilterbank& fb) {
  std::vector<double> mel = apply_filterbank(fb, spec);
  for (double& m : mel) {
    m = std::log(std::max(m, kLogFloor));
  }
  const std::vector<double> coeffs = dct2_orthonormal(mel);
  std::array<double, kNumMfcc> out{};
  for (int i = 0; i < kNumMfcc && i < static_cast<int>(coeffs.size()); ++i) {
    out[static_cast<std::size_t>(i)] = coeffs[static_cast<std::size_t>(i)];
  }
  return out;
}

std::array<double, kNumChroma> chroma(const MagnitudeSpectrum& spec,
                                      double tuning_a4_hz) {
  std::array<double, kNumChroma> out{};
  double total = 0.0;
  for (std::size_t k = 0; k < spec.bins.size(); ++k) {
    const double f = spec.freq(k);
    if (f < 30.0) {
      continue;
    }
    // MIDI note number; 69 = A4, class 0 = C.
    const long note = std::lround(12.0 * std::log2(f / tuning_a4_hz) + 69.0);
    if (note < 0) {
      continue;
    }
    const auto pc = static_cast<std::size_t>(note % 12);
    const double power = spec.bins[k] * spec.bins[k];
    out[pc] += power;
    total += power;
  }
  if (total > 0.0) {
    for (double& v : out) {
      v /= total;
    }
  }
  return out;
}

FrameFeatures aggregate_frames(std::span<const FrameFeatures> frames) {
  if (frames.empty()) {
    throw EmptyInput("aggregate_frames: no frames");
  }
  FrameFeatures mean;
  for (const FrameFeatures& f : frames) {
    mean.zcr += f.zcr;
    mean.energy += f.energy;
    mean.energy_entropy += f.energy_entropy;
    mean.centroid += f.centroid;
    mean.spread += f.spread;
    mean.rolloff += f.rolloff;
    mean.spectral_entropy += f.spectral_entropy;
    for (int i = 0; i < kNumMfcc; ++i) {
      mean.mfcc[static_cast<std::size_t>(i)] +=
          f.mfcc[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < kNumChroma; ++i) {
      mean.chroma[static_cast<std::size_t>(i)] +=
          f.chroma[static_cast<std::size_t>(i)];
    }
  }
  const double inv = 1.0 / static_cast<double>(frames.size());
  mean.zcr *= inv;
  mean.energy *= inv;
  mean.energy_entropy *= inv;
  mean.centroid *= inv;
  mean.spread *= inv;
  mean.rolloff *= inv;
  mean.spectral_entropy *= inv;
  for (double& m : mean.mfcc) {
    m *= inv;
  }
  for (double& c : mean.chroma) {
    c *= inv;
  }

  // Flux is defined between consecutive frames, so frame 1 carries none.
  if (frames.size() > 1) {
    double acc = 0.0;
    for (std::size_t i = 1; i < frames.size(); ++i) {
      acc += frames[i].flux;
    }
    mean.flux = acc / static_cast<double>(frames.size() - 1);
  } else {
    mean.flux = 0.0;
  }
  return mean;
}

}  // namespace speechml
