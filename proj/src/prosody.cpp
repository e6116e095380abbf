#include "speechml/prosody.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "speechml/errors.hpp"

namespace speechml {

namespace {

// Mean-square at or below this is digital silence: always a silent frame, no
// matter where the peak-relative threshold lands. Keeps a fully silent
// recording classified as pause while leaving gain invariance intact for any
// real signal level.
constexpr double kDigitalSilenceMeanSquare = 1e-9;

}  // namespace

SpeechSegmentation segment_speech(const AudioSignal& signal,
                                  const SegmentationParams& params) {
  const FrameSequence frames = frame_signal(
      signal, params.frame_ms, params.hop_ms, WindowKind::rectangular);
  const std::size_t n = frames.frames();

  SpeechSegmentation seg;
  seg.hop_s = static_cast<double>(frames.hop_len) / signal.sample_rate;
  seg.frame_s = static_cast<double>(frames.frame_len) / signal.sample_rate;
  seg.total_s = signal.duration_s();
  seg.intensity_db.resize(n);
  seg.voiced_mask.resize(n);
  seg.f0_hz.resize(n);

  std::vector<double> mean_square(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto frame = frames.frame(i);
    double acc = 0.0;
    for (double s : frame) {
      acc += s * s;
    }
    mean_square[i] = acc / static_cast<double>(frame.size());
    seg.intensity_db[i] = 10.0 * std::log10(mean_square[i] + kLogFloor);

    const PitchEstimate pitch =
        estimate_pitch(frame, signal.sample_rate, params.pitch);
    seg.voiced_mask[i] = pitch.voiced ? 1 : 0;
    seg.f0_hz[i] = pitch.voiced ? pitch.f0_hz : 0.0;
  }

  const double peak_db =
      *std::max_element(seg.intensity_db.begin(), seg.intensity_db.end());
  seg.silence_threshold_db = peak_db - params.silence_db_below_peak;

  std::vector<char> silent(n);
  bool any_speech = false;
  for (std::size_t i = 0; i < n; ++i) {
    silent[i] = mean_square[i] <= kDigitalSilenceMeanSquare ||
                seg.intensity_db[i] < seg.silence_threshold_db;
    any_speech = any_speech || !silent[i];
  }

  if (!any_speech) {
    seg.pause_spans.push_back({0.0, seg.total_s});
    return seg;
  }

  // Silent runs shorter than min_pause_s are folded back into speech.
  const auto frames_needed = static_cast<std::size_t>(
      std::ceil(params.min_pause_s / seg.hop_s - 1e-9));
  std::size_t i = 0;
  while (i < n) {
    if (silent[i]) {
      std::size_t j = i;
      while (j < n && silent[j]) {
        ++j;
      }
      if (j - i < std::max<std::size_t>(frames_needed, 1)) {
        std::fill(silent.begin() + static_cast<std::ptrdiff_t>(i),
                  silent.begin() + static_cast<std::ptrdiff_t>(j), 0);
      }
      i = j;
    } else {
      ++i;
    }
  }

  // Frame i owns [i*hop, (i+1)*hop); the last frame extends to the end.
  auto span_start = [&](std::size_t f) {
    return static_cast<double>(f) * seg.hop_s;
  };
  auto span_end = [&](std::size_t f) {
    return f + 1 == n ? seg.total_s : static_cast<double>(f + 1) * seg.hop_s;
  };

  i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && silent[j + 1] == silent[i]) {
      ++j;
    }
    const TimeSpan span{span_start(i), span_end(j)};
    if (silent[i]) {
      seg.pause_spans.push_back(span);
    } else {
      seg.speech_spans.push_back(span);
    }
    i = j + 1;
  }
  return seg;
}

SyllableNuclei detect_syllable_nuclei(const AudioSignal& signal,
                                      const SpeechSegmentation& seg,
                                      double min_dip_db) {
  (void)signal;  // voicing was computed against the same frames in seg
  SyllableNuclei nuclei;
  const std::size_t n = seg.frames();
  const auto& db = seg.intensity_db;

  std::ptrdiff_t last_accepted = -1;
  for (std::size_t i = 0; i < n; ++i) {
    if (db[i] < seg.silence_threshold_db) {
      continue;
    }
    const bool rises = i == 0 || db[i] > db[i - 1];
    const bool falls = i + 1 == n || db[i] >= db[i + 1];
    if (!rises || !falls) {
      continue;
    }
    if (last_accepted >= 0) {
      double valley = db[i];
      for (std::size_t j = static_cast<std::size_t>(last_accepted) + 1; j < i;
           ++j) {
        valley = std::min(valley, db[j]);
      }
      if (db[i] - valley < min_dip_db) {
        continue;
      }
    }
    if (!seg.voiced_mask[i]) {
      continue;
    }
    last_accepted = static_cast<std::ptrdiff_t>(i);
    nuclei.times_s.push_back(seg.frame_center_s(i));
  }
  return nuclei;
}

ProsodyFeatures compute_prosody(const AudioSignal& signal,
                                const SpeechSegmentation& seg,
                                const SyllableNuclei& nuclei) {
  ProsodyFeatures out;
  out.original_duration_s = signal.duration_s();
  for (const TimeSpan& s : seg.speech_spans) {
    out.speaking_duration_s += s.length_s();
  }
  out.n_syllables = nuclei.count();
  out.n_pauses = static_cast<int>(seg.pause_spans.size());

  if (out.original_duration_s > 0.0) {
    out.rate_of_speech = out.n_syllables / out.original_duration_s;
    out.balance =
        std::clamp(out.speaking_duration_s / out.original_duration_s, 0.0, 1.0);
  }
  out.articulation_rate = out.speaking_duration_s > 0.0
                              ? out.n_syllables / out.speaking_duration_s
                              : 0.0;

  double f0_acc = 0.0;
  std::size_t voiced = 0;
  for (std::size_t i = 0; i < seg.frames(); ++i) {
    if (seg.voiced_mask[i]) {
      f0_acc += seg.f0_hz[i];
      ++voiced;
    }
  }
  out.f0_mean_hz = voiced > 0 ? f0_acc / static_cast<double>(voiced) : 0.0;
  return out;
}

}  // namespace speechml
