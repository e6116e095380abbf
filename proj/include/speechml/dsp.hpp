#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace speechml {

// Floor applied wherever a logarithm of an energy is taken, so silence never
// produces -inf.
inline constexpr double kLogFloor = 1e-10;

// Frames with mean-square below this are treated as silent by the pitch
// detector.
inline constexpr double kSilenceFloorMeanSquare = 1e-4;

/// One-sided magnitude spectrum of an analysis frame: frame_len/2 + 1 bins.
struct MagnitudeSpectrum {
  std::vector<double> bins;
  double bin_hz = 0.0;

  double freq(std::size_t k) const { return bin_hz * static_cast<double>(k); }
  double top_hz() const {
    return bins.empty() ? 0.0 : freq(bins.size() - 1);
  }
};

/// Triangular filters with centers equally spaced on the mel scale.
struct MelFilterbank {
  struct Edges {
    double left_hz = 0.0, center_hz = 0.0, right_hz = 0.0;
  };

  int n_filters = 0;
  std::size_t n_bins = 0;
  std::vector<double> weights;  // n_filters x n_bins, row-major
  std::vector<Edges> edges;

  std::span<const double> row(int i) const {
    return {weights.data() + static_cast<std::size_t>(i) * n_bins, n_bins};
  }
};

struct PitchEstimate {
  double f0_hz = 0.0;  // meaningful only when voiced
  bool voiced = false;
  double confidence = 0.0;  // normalized autocorrelation peak, 0 below the
                            // silence floor so voiced <=> confidence >= thr
};

struct PitchParams {
  double f_min_hz = 75.0;
  double f_max_hz = 500.0;
  double voicing_threshold = 0.45;
};

double mel_from_hz(double hz);
double hz_from_mel(double mel);

/// Full complex DFT; arbitrary length, matches direct summation to ~1e-12.
std::vector<std::complex<double>> dft_forward(std::span<const double> x);

/// |DFT_k| for k = 0..N/2 with bin_hz = sample_rate / N.
MagnitudeSpectrum magnitude_spectrum(std::span<const double> frame,
                                     int sample_rate);

/// n_filters triangular filters between 0 Hz and Nyquist; the right edge of
/// filter i coincides with the center of filter i+1. Requires n_filters >= 14.
MelFilterbank build_mel_filterbank(int sample_rate, std::size_t frame_len,
                                   int n_filters);

/// Orthonormal DCT-II; basis row 0 is the constant vector at unit norm.
std::vector<double> dct2_orthonormal(std::span<const double> v);

std::vector<double> apply_filterbank(const MelFilterbank& fb,
                                     const MagnitudeSpectrum& spec);

/// Normalized autocorrelation r(tau)/r(0) maximized over the lag range
/// [sr/f_max, sr/f_min]. Voiced iff the peak clears the voicing threshold and
/// the frame clears the silence floor; f0 = sr / tau*. Requires the frame to
/// cover at least two periods of f_min.
PitchEstimate estimate_pitch(std::span<const double> frame, int sample_rate,
                             const PitchParams& params = {});

}  // namespace speechml
