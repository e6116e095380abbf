#pragma once

#include <array>
#include <span>
#include <utility>

#include "speechml/dsp.hpp"

namespace speechml {

inline constexpr int kNumMfcc = 13;
inline constexpr int kNumChroma = 12;

/// Per-frame short-term features. aggregate_frames() reuses the same shape
/// for the field-wise means over a recording.
struct FrameFeatures {
  double zcr = 0.0;
  double energy = 0.0;
  double energy_entropy = 0.0;
  double centroid = 0.0;
  double spread = 0.0;
  double rolloff = 0.0;
  double flux = 0.0;
  double spectral_entropy = 0.0;
  std::array<double, kNumMfcc> mfcc{};
  std::array<double, kNumChroma> chroma{};
};

/// Sign changes between consecutive samples over (L - 1); zero samples count
/// as nonnegative.
double zero_crossing_rate(std::span<const double> frame);

/// Mean square of the frame.
double short_energy(std::span<const double> frame);

/// Shannon entropy (bits) of the energy distribution over n_sub sub-frames;
/// the last sub-frame may be shorter. All-silent frames return 0.
double energy_entropy(std::span<const double> frame, int n_sub = 10);

/// (centroid, spread) in Hz, magnitude-weighted. All-zero spectrum -> (0, 0).
std::pair<double, double> spectral_centroid_spread(
    const MagnitudeSpectrum& spec);

/// Smallest bin frequency below which fraction c of the spectral energy lies.
double spectral_rolloff(const MagnitudeSpectrum& spec, double c = 0.90);

/// Squared distance between the two sum-normalized magnitude distributions.
/// An all-zero spectrum is treated as uniform.
double spectral_flux(const MagnitudeSpectrum& cur,
                     const MagnitudeSpectrum& prev);

/// Shannon entropy (bits) of band energies over n_bands contiguous bands of
/// the power spectrum.
double spectral_entropy(const MagnitudeSpectrum& spec, int n_bands = 10);

/// DCT of log mel-filterbank magnitudes, first kNumMfcc coefficients.
std::array<double, kNumMfcc> mfcc(const MagnitudeSpectrum& spec,
                                  const MelFilterbank& fb);

/// Power distribution over the 12 pitch classes (class 0 = C); sums to 1 or
/// is all-zero for a silent frame. Bins below 30 Hz are ignored.
std::array<double, kNumChroma> chroma(const MagnitudeSpectrum& spec,
                                      double tuning_a4_hz = 440.0);

/// Field-wise mean over frames; flux is averaged over frames 2..T and is 0
/// for a single frame. Throws EmptyInput for an empty sequence.
FrameFeatures aggregate_frames(std::span<const FrameFeatures> frames);

}  // namespace speechml
