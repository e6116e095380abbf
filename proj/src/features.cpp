#include "speechml/features.hpp"

#include <string>
#include <vector>

#include "speechml/shortterm.hpp"

namespace speechml {

const std::vector<std::string>& feature_schema() {
  static const std::vector<std::string> schema = [] {
    std::vector<std::string> s;
    s.reserve(kFeatureCount);
    s.emplace_back("f0_mean");
    for (int i = 1; i <= kNumMfcc; ++i) {
      s.push_back("mfcc_" + std::to_string(i));
    }
    s.emplace_back("energy");
    s.emplace_back("energy_entropy");
    s.emplace_back("zcr");
    s.emplace_back("rate_of_speech");
    s.emplace_back("n_syllables");
    s.emplace_back("n_pauses");
    s.emplace_back("balance");
    s.emplace_back("spectral_centroid");
    s.emplace_back("spectral_spread");
    s.emplace_back("spectral_rolloff");
    s.emplace_back("spectral_flux");
    s.emplace_back("spectral_entropy");
    for (int i = 1; i <= kNumChroma; ++i) {
      s.push_back("chroma_" + std::to_string(i));
    }
    s.emplace_back("speaking_duration");
    s.emplace_back("original_duration");
    s.emplace_back("articulation_rate");
    return s;
  }();
  return schema;
}

int feature_index(std::string_view name) {
  const auto& schema = feature_schema();
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (schema[i] == name) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

FeatureVector extract_features(const AudioSignal& raw,
                               const AnalysisConfig& config) {
  const AudioSignal signal = resample_check(raw);

  const FrameSequence windowed = frame_signal(
      signal, config.frame_ms, config.hop_ms, WindowKind::hamming);
  const MelFilterbank fb = build_mel_filterbank(
      signal.sample_rate, windowed.frame_len, config.n_mel_filters);

  std::vector<FrameFeatures> per_frame(windowed.frames());
  MagnitudeSpectrum prev_spec;
  for (std::size_t i = 0; i < windowed.frames(); ++i) {
    const auto frame = windowed.frame(i);
    const MagnitudeSpectrum spec =
        magnitude_spectrum(frame, signal.sample_rate);

    FrameFeatures& ff = per_frame[i];
    ff.zcr = zero_crossing_rate(frame);
    ff.energy = short_energy(frame);
    ff.energy_entropy = energy_entropy(frame);
    std::tie(ff.centroid, ff.spread) = spectral_centroid_spread(spec);
    ff.rolloff = spectral_rolloff(spec);
    ff.flux = i > 0 ? spectral_flux(spec, prev_spec) : 0.0;
    ff.spectral_entropy = spectral_entropy(spec);
    ff.mfcc = mfcc(spec, fb);
    ff.chroma = chroma(spec, config.tuning_a4_hz);
    prev_spec = spec;
  }
  const FrameFeatures st = aggregate_frames(per_frame);

  const SpeechSegmentation seg =
      segment_speech(signal, config.segmentation());
  const SyllableNuclei nuclei =
      detect_syllable_nuclei(signal, seg, config.min_dip_db);
  const ProsodyFeatures pros = compute_prosody(signal, seg, nuclei);

  FeatureVector v{};
  std::size_t idx = 0;
  v[idx++] = pros.f0_mean_hz;
  for (int i = 0; i < kNumMfcc; ++i) {
    v[idx++] = st.mfcc[static_cast<std::size_t>(i)];
  }
  v[idx++] = st.energy;
  v[idx++] = st.energy_entropy;
  v[idx++] = st.zcr;
  v[idx++] = pros.rate_of_speech;
  v[idx++] = static_cast<double>(pros.n_syllables);
  v[idx++] = static_cast<double>(pros.n_pauses);
  v[idx++] = pros.balance;
  v[idx++] = st.centroid;
  v[idx++] = st.spread;
  v[idx++] = st.rolloff;
  v[idx++] = st.flux;
  v[idx++] = st.spectral_entropy;
  for (int i = 0; i < kNumChroma; ++i) {
    v[idx++] = st.chroma[static_cast<std::size_t>(i)];
  }
  v[idx++] = pros.speaking_duration_s;
  v[idx++] = pros.original_duration_s;
  v[idx++] = pros.articulation_rate;
  return v;
}

}  // namespace speechml
