#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "speechml/audio.hpp"
#include "speechml/dsp.hpp"
#include "speechml/prosody.hpp"

namespace speechml {

inline constexpr std::size_t kFeatureCount = 41;

/// Canonical recording-level feature vector, in schema order.
using FeatureVector = std::array<double, kFeatureCount>;

/// The fixed, versioned column order of every feature table.
const std::vector<std::string>& feature_schema();

/// Index of a schema name, or -1.
int feature_index(std::string_view name);

struct AnalysisConfig {
  double frame_ms = 50.0;
  double hop_ms = 25.0;
  double silence_db_below_peak = 25.0;
  double min_pause_s = 0.3;
  double min_dip_db = 2.0;
  PitchParams pitch;
  int n_mel_filters = 26;
  double tuning_a4_hz = 440.0;

  SegmentationParams segmentation() const {
    return {frame_ms, hop_ms, silence_db_below_peak, min_pause_s, pitch};
  }
};

/// Run the whole per-recording pipeline: hamming-windowed short-term features
/// averaged over frames, plus prosody from the intensity contour.
FeatureVector extract_features(const AudioSignal& signal,
                               const AnalysisConfig& config = {});

}  // namespace speechml
