#include "speechml/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "speechml/csvio.hpp"
#include "speechml/errors.hpp"
#include "speechml/rng.hpp"

namespace speechml {

namespace {

constexpr double kPadS = 0.1;        // leading/trailing silence, not a pause
constexpr double kGapS = 0.06;       // inter-syllable gap, below pause length
constexpr double kContourHz = 0.5;   // pitch contour rate
constexpr double kHarmonicNorm = 1.0 + 0.5 + 0.25 + 0.125;

struct ClipLayout {
  std::size_t pad = 0;
  std::size_t syllable = 0;
  std::size_t gap = 0;
  std::vector<std::size_t> pause_start;  // output-sample index, sorted
  std::vector<std::size_t> pause_len;
  std::size_t total = 0;
};

std::size_t to_samples(double seconds, int sample_rate) {
  return static_cast<std::size_t>(std::lround(seconds * sample_rate));
}

ClipLayout plan_clip(const ClipSpec& spec) {
  if (spec.n_syllables < 0) {
    throw InvalidSpec("synth_clip: negative syllable count");
  }
  if (spec.sample_rate < kMinSampleRate) {
    throw InvalidSpec("synth_clip: sample rate below 8000 Hz");
  }
  if (!(spec.amplitude >= 0.0) || spec.amplitude > 1.0) {
    throw InvalidSpec("synth_clip: amplitude must be in [0, 1]");
  }
  if (spec.n_syllables > 0 &&
      (spec.f0_base_hz - spec.f0_variation_hz < 75.0 ||
       spec.f0_base_hz + spec.f0_variation_hz > 500.0 ||
       spec.f0_variation_hz < 0.0)) {
    throw InvalidSpec("synth_clip: pitch contour outside [75, 500] Hz");
  }
  if (spec.n_syllables > 0 && !(spec.syllable_dur_s > 0.0)) {
    throw InvalidSpec("synth_clip: non-positive syllable duration");
  }

  ClipLayout layout;
  layout.pad = to_samples(kPadS, spec.sample_rate);
  layout.syllable = to_samples(spec.syllable_dur_s, spec.sample_rate);
  layout.gap = to_samples(kGapS, spec.sample_rate);

  const auto n = static_cast<std::size_t>(spec.n_syllables);
  std::size_t stream = 2 * layout.pad;
  if (n > 0) {
    stream += n * layout.syllable + (n - 1) * layout.gap;
  }

  std::vector<PauseSpec> pauses = spec.pauses;
  std::sort(pauses.begin(), pauses.end(),
            [](const PauseSpec& a, const PauseSpec& b) {
              return a.start_s < b.start_s;
            });
  std::size_t pause_total = 0;
  for (const PauseSpec& p : pauses) {
    if (!(p.dur_s > 0.0) || p.start_s < 0.0) {
      throw InvalidSpec("synth_clip: bad pause span");
    }
    layout.pause_start.push_back(to_samples(p.start_s, spec.sample_rate));
    layout.pause_len.push_back(to_samples(p.dur_s, spec.sample_rate));
    pause_total += layout.pause_len.back();
  }
  layout.total = stream + pause_total;

  for (std::size_t i = 0; i < layout.pause_start.size(); ++i) {
    const std::size_t end = layout.pause_start[i] + layout.pause_len[i];
    if (end > layout.total) {
      throw InvalidSpec("synth_clip: pause extends past the clip");
    }
    if (i > 0 &&
        layout.pause_start[i] <
            layout.pause_start[i - 1] + layout.pause_len[i - 1]) {
      throw InvalidSpec("synth_clip: overlapping pauses");
    }
  }
  return layout;
}

}  // namespace

std::size_t synth_clip_length(const ClipSpec& spec) {
  return plan_clip(spec).total;
}

AudioSignal synth_clip(const ClipSpec& spec) {
  const ClipLayout layout = plan_clip(spec);
  Rng rng(spec.seed);
  const double contour_phase = next_range(rng, 0.0, 2.0 * std::numbers::pi);
  std::vector<double> syllable_amp(
      static_cast<std::size_t>(std::max(spec.n_syllables, 0)));
  for (double& a : syllable_amp) {
    a = spec.amplitude * next_range(rng, 0.85, 1.0);
  }

  AudioSignal out;
  out.sample_rate = spec.sample_rate;
  out.samples.assign(layout.total, 0.0);

  // Walk the output timeline; pauses freeze the speech stream.
  std::size_t pause_idx = 0;
  std::size_t stream_pos = 0;  // position inside pad+syllable+gap stream
  double theta = 0.0;
  const double sr = spec.sample_rate;
  const auto n_syll = static_cast<std::size_t>(std::max(spec.n_syllables, 0));
  const std::size_t period = layout.syllable + layout.gap;

  for (std::size_t m = 0; m < layout.total; ++m) {
    while (pause_idx < layout.pause_start.size() &&
           m >= layout.pause_start[pause_idx] + layout.pause_len[pause_idx]) {
      ++pause_idx;
    }
    if (pause_idx < layout.pause_start.size() &&
        m >= layout.pause_start[pause_idx]) {
      continue;  // digital silence
    }

    const std::size_t pos = stream_pos++;
    if (pos < layout.pad || n_syll == 0) {
      continue;
    }
    const std::size_t content = pos - layout.pad;
    const std::size_t syll = period > 0 ? content / period : 0;
    if (syll >= n_syll) {
      continue;  // trailing pad
    }
    const std::size_t offset = content - syll * period;
    if (offset >= layout.syllable) {
      continue;  // inter-syllable gap
    }

    const double t = static_cast<double>(m) / sr;
    const double f0 =
        spec.f0_base_hz +
        spec.f0_variation_hz *
            std::sin(2.0 * std::numbers::pi * kContourHz * t + contour_phase);
    theta += 2.0 * std::numbers::pi * f0 / sr;

    const double u = layout.syllable > 1
                         ? static_cast<double>(offset) /
                               static_cast<double>(layout.syllable - 1)
                         : 0.5;
    const double env =
        0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * u));
    const double harmonics =
        std::sin(theta) + 0.5 * std::sin(2.0 * theta) +
        0.25 * std::sin(3.0 * theta) + 0.125 * std::sin(4.0 * theta);
    out.samples[m] = syllable_amp[syll] * env * harmonics / kHarmonicNorm;
  }
  return out;
}

CorpusResult synth_corpus(const CorpusSpec& spec,
                          const std::filesystem::path& out_dir) {
  if (spec.n_clips < 10) {
    throw InvalidSpec("synth_corpus: need at least 10 clips for 5-fold use");
  }
  if (!(spec.class_balance > 0.0) || !(spec.class_balance < 1.0)) {
    throw InvalidSpec("synth_corpus: class_balance must be in (0, 1)");
  }
  if (spec.separation < 0.0) {
    throw InvalidSpec("synth_corpus: separation must be >= 0");
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("synth_corpus: cannot create " + out_dir.string());
  }

  const auto n = static_cast<std::size_t>(spec.n_clips);
  const auto n_pos = static_cast<std::size_t>(
      std::lround(spec.class_balance * static_cast<double>(n)));
  std::vector<int> labels(n, 0);
  std::fill(labels.begin(),
            labels.begin() + static_cast<std::ptrdiff_t>(n_pos), 1);
  Rng corpus_rng(spec.seed);
  shuffle_in_place(labels, corpus_rng);

  const double s = std::min(spec.separation, 2.0);

  CorpusResult result;
  std::vector<ManifestRow> manifest_rows;
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(spec.seed, i));
    const int label = labels[i];

    // Baseline draws are label-independent so separation 0 leaves the two
    // classes identically distributed.
    ClipSpec clip;
    clip.sample_rate = spec.sample_rate;
    clip.seed = derive_seed(spec.seed, i + 0x10000);
    clip.n_syllables = 8 + static_cast<int>(next_index(rng, 7));  // 8..14
    clip.syllable_dur_s = next_range(rng, 0.12, 0.18);
    const double f0_draw = next_range(rng, 140.0, 220.0);
    clip.f0_base_hz = f0_draw;
    clip.f0_variation_hz = next_range(rng, 20.0, 40.0);
    clip.amplitude = next_range(rng, 0.5, 0.8);
    const int n_pauses = 1 + static_cast<int>(next_index(rng, 3));  // 1..3
    std::vector<double> pause_durs;
    for (int p = 0; p < n_pauses; ++p) {
      pause_durs.push_back(next_range(rng, 0.4, 0.7));
    }
    std::vector<std::size_t> boundaries;  // pause goes after syllable b
    {
      std::vector<std::size_t> all;
      for (std::size_t b = 1;
           b < static_cast<std::size_t>(clip.n_syllables); ++b) {
        all.push_back(b);
      }
      shuffle_in_place(all, rng);
      all.resize(std::min<std::size_t>(all.size(),
                                       static_cast<std::size_t>(n_pauses)));
      std::sort(all.begin(), all.end());
      boundaries = std::move(all);
    }
    const double score =
        label == 1 ? next_range(rng, 0.5, 1.0) : next_range(rng, 0.0, 0.5);

    // The score is the severity axis and the label adds a class offset, so
    // positive clips sit in [0.75, 1.25] severity and negatives in [0, 0.5]:
    // the classes separate with a margin while the score itself stays
    // recoverable from the audio. separation 0 turns every coupling off.
    if (s > 0.0) {
      const double severity = score + 0.25 * label;
      const double strength = std::min(s * severity, 2.0);
      clip.f0_variation_hz *=
          std::max(1.0 - 0.75 * std::min(strength, 1.0), 0.0);
      clip.syllable_dur_s *= 1.0 + 0.7 * strength;
      for (double& d : pause_durs) {
        d *= 1.0 + 1.0 * strength;
      }
      const double f0_severity = 215.0 - 70.0 * severity +
                                 0.1 * (f0_draw - 180.0);
      const double blend = std::min(s, 1.0);
      clip.f0_base_hz = (1.0 - blend) * f0_draw + blend * f0_severity;
    }

    // Pause start times: center of the gap after the chosen syllable, offset
    // by the pauses already inserted before it.
    double inserted = 0.0;
    for (std::size_t p = 0; p < boundaries.size(); ++p) {
      const auto b = static_cast<double>(boundaries[p]);
      const double stream_t = kPadS + b * clip.syllable_dur_s +
                              (b - 1.0) * kGapS + kGapS / 2.0;
      clip.pauses.push_back({stream_t + inserted, pause_durs[p]});
      inserted += pause_durs[p];
    }

    CorpusClip entry;
    entry.id = "clip_" + std::string(i < 10 ? "00" : i < 100 ? "0" : "") +
               std::to_string(i);
    entry.filename = entry.id + ".wav";
    entry.label = label;
    entry.score = score;
    entry.spec = clip;

    write_wav(out_dir / entry.filename, synth_clip(clip));
    manifest_rows.push_back({entry.id, entry.filename, label, score});
    result.clips.push_back(std::move(entry));
  }

  result.manifest_path = out_dir / "manifest.csv";
  write_manifest(result.manifest_path, manifest_rows);
  return result;
}

}  // namespace speechml
