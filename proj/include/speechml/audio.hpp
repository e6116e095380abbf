#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace speechml {

inline constexpr int kMinSampleRate = 8000;

/// Mono audio with amplitudes in [-1, 1].
struct AudioSignal {
  std::vector<double> samples;
  int sample_rate = 0;

  double duration_s() const {
    return sample_rate > 0
               ? static_cast<double>(samples.size()) / sample_rate
               : 0.0;
  }
};

enum class WindowKind { rectangular, hamming };

/// Fixed-length analysis frames cut at hop intervals, stored contiguously.
struct FrameSequence {
  std::vector<double> data;  // frames() rows of frame_len samples
  std::size_t frame_len = 0;
  std::size_t hop_len = 0;
  int sample_rate = 0;
  WindowKind window = WindowKind::rectangular;

  std::size_t frames() const {
    return frame_len == 0 ? 0 : data.size() / frame_len;
  }
  std::span<const double> frame(std::size_t i) const {
    return {data.data() + i * frame_len, frame_len};
  }
  double frame_start_s(std::size_t i) const {
    return static_cast<double>(i * hop_len) / sample_rate;
  }
};

/// Decode a RIFF/WAVE file (PCM signed 16-bit, 1 or 2 channels). Integer
/// samples are scaled by 1/32768; stereo is downmixed by per-sample channel
/// average. Throws MalformedWav or UnsupportedFormat.
AudioSignal load_wav(const std::filesystem::path& path);

/// Write PCM 16-bit mono WAV. Samples are clamped to [-1, 1] and quantized
/// with round-to-nearest at 32767 full scale.
void write_wav(const std::filesystem::path& path, const AudioSignal& signal);

/// w[n] = 0.54 - 0.46 cos(2 pi n / (L - 1)); w = {1} for L == 1.
std::vector<double> hamming_window(std::size_t len);

/// Cut the signal into frames of frame_ms every hop_ms, applying the chosen
/// window multiplicatively. Throws SignalTooShort if the signal does not
/// cover one frame.
FrameSequence frame_signal(const AudioSignal& signal, double frame_ms,
                           double hop_ms, WindowKind window);

/// Identity pass-through with validation; no resampling is performed
/// (features downstream are reported in physical units at native rate).
AudioSignal resample_check(AudioSignal signal);

}  // namespace speechml
