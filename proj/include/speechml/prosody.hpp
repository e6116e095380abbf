#pragma once

#include <cstddef>
#include <vector>

#include "speechml/audio.hpp"
#include "speechml/dsp.hpp"

namespace speechml {

struct TimeSpan {
  double start_s = 0.0;
  double end_s = 0.0;
  double length_s() const { return end_s - start_s; }
};

struct SegmentationParams {
  double frame_ms = 50.0;
  double hop_ms = 25.0;
  double silence_db_below_peak = 25.0;
  double min_pause_s = 0.3;
  PitchParams pitch;
};

/// Frame-level intensity/voicing contour plus the pause/speech partition of
/// the recording. Pause and speech spans are disjoint, ordered, and cover
/// [0, original duration].
struct SpeechSegmentation {
  std::vector<double> intensity_db;  // 10 log10(mean-square + floor)
  std::vector<char> voiced_mask;
  std::vector<double> f0_hz;  // per frame, 0 when unvoiced
  std::vector<TimeSpan> pause_spans;
  std::vector<TimeSpan> speech_spans;
  double silence_threshold_db = 0.0;
  double hop_s = 0.0;
  double frame_s = 0.0;
  double total_s = 0.0;

  std::size_t frames() const { return intensity_db.size(); }
  double frame_center_s(std::size_t i) const {
    return static_cast<double>(i) * hop_s + frame_s / 2.0;
  }
};

struct SyllableNuclei {
  std::vector<double> times_s;  // nucleus frame centers
  int count() const { return static_cast<int>(times_s.size()); }
};

struct ProsodyFeatures {
  double f0_mean_hz = 0.0;
  int n_syllables = 0;
  int n_pauses = 0;
  double rate_of_speech = 0.0;     // syllables / original duration
  double articulation_rate = 0.0;  // syllables / speaking duration
  double speaking_duration_s = 0.0;
  double original_duration_s = 0.0;
  double balance = 0.0;  // speaking / original, in [0, 1]
};

/// Threshold the per-frame intensity contour at (peak - silence_db_below_peak)
/// dB; maximal silent runs of at least min_pause_s become pauses. Frames of
/// digital silence are always silent, so a fully silent recording is one
/// pause.
SpeechSegmentation segment_speech(const AudioSignal& signal,
                                  const SegmentationParams& params = {});

/// Intensity-peak syllable nuclei: local maxima of the intensity contour
/// above the silence threshold count iff they are separated from the previous
/// accepted peak by a dip of at least min_dip_db and their frame is voiced.
SyllableNuclei detect_syllable_nuclei(const AudioSignal& signal,
                                      const SpeechSegmentation& seg,
                                      double min_dip_db = 2.0);

ProsodyFeatures compute_prosody(const AudioSignal& signal,
                                const SpeechSegmentation& seg,
                                const SyllableNuclei& nuclei);

}  // namespace speechml
