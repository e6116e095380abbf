#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "speechml/audio.hpp"

namespace speechml {

/// One planted pause: digital silence inserted into the speech stream at
/// start_s of the output timeline.
struct PauseSpec {
  double start_s = 0.0;
  double dur_s = 0.0;
};

/// Blueprint for one synthetic clip. Syllables are harmonic vowel-like bursts
/// (fundamental plus three harmonics at 1, 0.5, 0.25, 0.125) under a
/// raised-cosine envelope, separated by 60 ms gaps; pitch follows a slow
/// sinusoidal contour around f0_base.
struct ClipSpec {
  int n_syllables = 0;
  std::vector<PauseSpec> pauses;
  double f0_base_hz = 150.0;
  double f0_variation_hz = 30.0;  // peak deviation of the pitch contour
  double syllable_dur_s = 0.15;
  double amplitude = 0.6;
  int sample_rate = 16000;
  std::uint64_t seed = 0;
};

/// Exact output length in samples for a spec (pads + syllables + gaps +
/// pauses, each rounded to samples).
std::size_t synth_clip_length(const ClipSpec& spec);

/// Deterministic synthesis; throws InvalidSpec on out-of-range parameters or
/// overlapping/out-of-bounds pauses.
AudioSignal synth_clip(const ClipSpec& spec);

struct CorpusSpec {
  int n_clips = 60;
  double class_balance = 0.5;  // fraction positive
  double separation = 1.0;     // 0 = classes identically distributed
  std::uint64_t seed = 0;
  int sample_rate = 16000;
};

struct CorpusClip {
  std::string id;
  std::string filename;
  int label = 0;
  double score = 0.0;
  ClipSpec spec;  // ground truth for verification
};

struct CorpusResult {
  std::vector<CorpusClip> clips;
  std::filesystem::path manifest_path;
};

/// Write n_clips WAVs plus a manifest CSV (id,path,label,score) into out_dir.
/// Positive clips shift toward flatter pitch contours, slower syllables and
/// longer pauses as separation grows; scores are uniform on [0.5, 1] for
/// positives and [0, 0.5] for negatives. Byte-identical output for the same
/// spec.
CorpusResult synth_corpus(const CorpusSpec& spec,
                          const std::filesystem::path& out_dir);

}  // namespace speechml
