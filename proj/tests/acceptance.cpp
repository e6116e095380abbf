// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Everything runs on synthetic signals and corpora.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "speechml/cart.hpp"
#include "speechml/cli.hpp"
#include "speechml/crossval.hpp"
#include "speechml/dsp.hpp"
#include "speechml/ensemble.hpp"
#include "speechml/features.hpp"
#include "speechml/metrics.hpp"
#include "speechml/prosody.hpp"
#include "speechml/shortterm.hpp"
#include "speechml/synth.hpp"
#include "support/helpers.hpp"

using namespace speechml;

namespace {

struct Criterion {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      failures.push_back(what);
    }
  }
};

int g_failed = 0;

void run(int number, const std::string& title,
         const std::function<void(Criterion&)>& body) {
  Criterion c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  if (c.failures.empty()) {
    std::printf("[PASS] criterion %d: %s\n", number, title.c_str());
  } else {
    ++g_failed;
    std::printf("[FAIL] criterion %d: %s\n", number, title.c_str());
    for (const std::string& f : c.failures) {
      std::printf("       - %s\n", f.c_str());
    }
  }
  std::fflush(stdout);
}

MagnitudeSpectrum windowed_tone(double freq, int sr, std::size_t len) {
  auto tone = testsupport::sine(freq, sr, len, 0.7);
  const auto w = hamming_window(len);
  for (std::size_t n = 0; n < len; ++n) {
    tone[n] *= w[n];
  }
  return magnitude_spectrum(tone, sr);
}

LabeledDataset extract_corpus_dataset(const std::filesystem::path& dir,
                                      double separation, std::uint64_t seed,
                                      int n_clips) {
  CorpusSpec spec;
  spec.n_clips = n_clips;
  spec.separation = separation;
  spec.seed = seed;
  synth_corpus(spec, dir);
  const auto features_path = dir / "features.csv";
  cmd_extract({dir / "manifest.csv", features_path, {}, false});
  return join_dataset(read_feature_table(features_path),
                      read_manifest(dir / "manifest.csv"));
}

void criterion_dsp(Criterion& c) {
  // ZCR of a 100 Hz sine @ 8 kHz: within one crossing of 2 f T
  const auto sine = testsupport::sine(100.0, 8000, 400, 0.5, 0.1);
  const double zcr = zero_crossing_rate(sine);
  c.expect(std::abs(zcr * 399.0 - 10.0) <= 1.0, "ZCR of 100 Hz sine");

  // spectral centroid of a 1 kHz tone within +-40 Hz
  const auto tone = windowed_tone(1000.0, 16000, 800);
  const auto [centroid, spread] = spectral_centroid_spread(tone);
  c.expect(std::abs(centroid - 1000.0) <= 40.0, "centroid of 1 kHz tone");
  (void)spread;

  // rolloff of a flat power spectrum within one bin of 0.9 * Nyquist
  MagnitudeSpectrum flat;
  flat.bin_hz = 20.0;
  flat.bins.assign(401, 1.0);
  c.expect(std::abs(spectral_rolloff(flat, 0.90) - 0.9 * 8000.0) <= 20.0,
           "rolloff of flat spectrum");

  // chroma argmax of 440 and 880 Hz tones = class A (9)
  const auto argmax = [](const std::array<double, 12>& v) {
    int best = 0;
    for (int i = 1; i < 12; ++i) {
      if (v[static_cast<std::size_t>(i)] >
          v[static_cast<std::size_t>(best)]) {
        best = i;
      }
    }
    return best;
  };
  c.expect(argmax(chroma(windowed_tone(440.0, 16000, 800))) == 9,
           "chroma argmax of 440 Hz");
  c.expect(argmax(chroma(windowed_tone(880.0, 16000, 800))) == 9,
           "chroma argmax of 880 Hz");

  // MFCC c1..c12 gain-invariant within 1e-6
  const MelFilterbank fb = build_mel_filterbank(16000, 800, 26);
  const auto frame = testsupport::white_noise(800, 21);
  std::vector<double> doubled(frame);
  for (double& s : doubled) {
    s *= 2.0;
  }
  const auto c1 = mfcc(magnitude_spectrum(frame, 16000), fb);
  const auto c2 = mfcc(magnitude_spectrum(doubled, 16000), fb);
  for (std::size_t j = 1; j < c1.size(); ++j) {
    c.expect(std::abs(c2[j] - c1[j]) <= 1e-6,
             "MFCC gain invariance at c" + std::to_string(j));
  }

  // Parseval within 1e-9 relative
  for (std::size_t n : {400u, 800u}) {
    const auto x = testsupport::white_noise(n, 137 + n);
    const MagnitudeSpectrum spec = magnitude_spectrum(x, 16000);
    double time_energy = 0.0;
    for (double s : x) {
      time_energy += s * s;
    }
    double freq_energy = spec.bins[0] * spec.bins[0] +
                         spec.bins.back() * spec.bins.back();
    for (std::size_t k = 1; k + 1 < spec.bins.size(); ++k) {
      freq_energy += 2.0 * spec.bins[k] * spec.bins[k];
    }
    freq_energy /= static_cast<double>(n);
    c.expect(std::abs(time_energy - freq_energy) <=
                 1e-9 * std::max(time_energy, 1.0),
             "Parseval at N=" + std::to_string(n));
  }
}

void criterion_cart_oracle(Criterion& c) {
  Rng rng(20240501);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + next_index(rng, 19);
    const std::size_t d = 1 + next_index(rng, 5);
    DataMatrix x(n, d);
    std::vector<double> y(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = next_range(rng, -2.0, 2.0);
      w[i] = next_range(rng, 0.25, 2.0);
      for (std::size_t j = 0; j < d; ++j) {
        x.at(i, j) = next_range(rng, -1.0, 1.0);
      }
    }
    const CartTree tree = build_cart(x, y, w, {.max_depth = 1});
    const auto oracle = testsupport::brute_force_root_split(x, y, w);
    const bool tree_split = !tree.is_leaf(0);
    if (tree_split != oracle.found ||
        (tree_split && (tree.nodes[0].feature != oracle.feature ||
                        tree.nodes[0].threshold != oracle.threshold))) {
      ++mismatches;
    }
  }
  c.expect(mismatches == 0,
           std::to_string(mismatches) + "/200 root splits differ");
}

void criterion_gbm(Criterion& c) {
  Rng rng(11);
  DataMatrix x(40, 2);
  std::vector<double> y(40);
  for (std::size_t i = 0; i < 40; ++i) {
    const double cls = i % 2 == 0 ? 0.0 : 1.0;
    const double center = cls == 0.0 ? -2.0 : 2.0;
    x.at(i, 0) = center + 0.5 * next_normal(rng);
    x.at(i, 1) = center + 0.5 * next_normal(rng);
    y[i] = cls;
  }
  const auto model = gbm_fit(x, y, GbmLoss::logistic, {});

  bool monotone = model.training_loss.size() == 101;
  for (std::size_t s = 1; s < model.training_loss.size(); ++s) {
    monotone =
        monotone && model.training_loss[s] <= model.training_loss[s - 1] +
                                                  1e-12;
  }
  c.expect(monotone, "logistic loss non-increasing over 100 stages");

  std::size_t hits = 0;
  for (std::size_t i = 0; i < 40; ++i) {
    hits += predicted_label(ensemble_predict(model, x.row(i))) ==
            static_cast<int>(y[i]);
  }
  c.expect(hits == 40, "training accuracy 1.0 on the separable toy set");

  // exact F0 = ln(p/(1-p)) with 3 positives, 1 negative
  DataMatrix x4(4, 1);
  for (std::size_t i = 0; i < 4; ++i) {
    x4.at(i, 0) = static_cast<double>(i);
  }
  const std::vector<double> y4 = {1.0, 1.0, 1.0, 0.0};
  const auto init_model = gbm_fit(x4, y4, GbmLoss::logistic,
                                  {.n_estimators = 0});
  c.expect(init_model.init_value == std::log(3.0), "F0 = ln(3) exactly");

  // MDI: sums to 1 and the planted feature dominates 4 noise features
  Rng rng2(17);
  DataMatrix xm(200, 5);
  std::vector<double> ym(200);
  for (std::size_t i = 0; i < 200; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      xm.at(i, j) = next_range(rng2, -1.0, 1.0);
    }
    ym[i] = xm.at(i, 0) > 0.0 ? 1.0 : 0.0;
  }
  const auto planted = gbm_fit(xm, ym, GbmLoss::logistic, {});
  const auto scores = mdi_importance(planted);
  double total = 0.0;
  for (double s : scores) {
    total += s;
  }
  c.expect(std::abs(total - 1.0) <= 1e-9, "MDI scores sum to 1");
  for (std::size_t j = 1; j < 5; ++j) {
    c.expect(scores[0] > scores[j],
             "planted feature outranks noise feature " + std::to_string(j));
  }
}

void criterion_metrics(Criterion& c) {
  const std::vector<double> predicted = {1.0, 2.0};
  const std::vector<double> actual = {2.0, 4.0};
  const auto m = regression_metrics(predicted, actual);
  c.expect(m.mae == 1.5, "MAE exactly 1.5");
  c.expect(m.mse == 2.5, "MSE exactly 2.5");
  c.expect(m.r2 == -1.5, "R2 exactly -1.5");

  const std::vector<double> mean_pred(4, 3.0);
  const std::vector<double> some = {1.0, 2.0, 3.0, 6.0};
  c.expect(std::abs(regression_metrics(mean_pred, some).r2) <= 1e-12,
           "mean predictor R2 = 0");

  const auto perfect = classification_metrics({2, 0, 0, 3});
  c.expect(perfect.accuracy == 1.0 && perfect.precision == 1.0 &&
               perfect.recall == 1.0 && perfect.f1 == 1.0,
           "perfect classifier metrics all 1");

  Rng rng(5);
  DataMatrix x(30, 4);
  for (auto& v : x.values) {
    v = next_normal(rng);
  }
  const auto corr = pearson_matrix(x);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      c.expect(std::abs(corr.at(a, b) - corr.at(b, a)) <= 1e-12,
               "correlation symmetry");
      c.expect(corr.at(a, b) >= -1.0 && corr.at(a, b) <= 1.0,
               "correlation bounds");
    }
  }
}

void criterion_prosody(Criterion& c) {
  const auto dir = testsupport::temp_dir("acc_prosody");
  CorpusSpec spec;
  spec.n_clips = 30;
  spec.separation = 0.7;
  spec.seed = 424242;
  const CorpusResult corpus = synth_corpus(spec, dir);

  for (const CorpusClip& clip : corpus.clips) {
    const AudioSignal sig = load_wav(dir / clip.filename);
    const SpeechSegmentation seg = segment_speech(sig);
    const SyllableNuclei nuclei = detect_syllable_nuclei(sig, seg);
    const ProsodyFeatures p = compute_prosody(sig, seg, nuclei);
    c.expect(p.n_pauses == static_cast<int>(clip.spec.pauses.size()),
             clip.id + ": pauses " + std::to_string(p.n_pauses) + " != " +
                 std::to_string(clip.spec.pauses.size()));
    c.expect(std::abs(p.n_syllables - clip.spec.n_syllables) <= 1,
             clip.id + ": syllables " + std::to_string(p.n_syllables) +
                 " vs planted " + std::to_string(clip.spec.n_syllables));
    c.expect(p.balance >= 0.0 && p.balance <= 1.0,
             clip.id + ": balance outside [0,1]");
  }

  // 200 ms gaps never count as pauses
  AudioSignal sig;
  sig.sample_rate = 16000;
  const auto burst = testsupport::plateau_burst(150.0, 16000, 16000, 0.6);
  sig.samples = burst;
  testsupport::append_silence(sig.samples, 0.2, 16000);
  sig.samples.insert(sig.samples.end(), burst.begin(), burst.end());
  c.expect(segment_speech(sig).pause_spans.empty(),
           "200 ms gap counted as a pause");
}

void criterion_end_to_end(Criterion& c) {
  const auto dir_hi = testsupport::temp_dir("acc_e2e_hi");
  const LabeledDataset ds_hi = extract_corpus_dataset(dir_hi, 1.0, 7, 60);
  const EvalReport hi = cross_validate(ds_hi, Task::classify, ModelKind::gbm,
                                       {.k = 5, .seed = 7});
  c.expect(hi.aggregate_cls.accuracy >= 0.90,
           "separation 1.0 accuracy " +
               std::to_string(hi.aggregate_cls.accuracy) + " < 0.90");

  const auto dir_null = testsupport::temp_dir("acc_e2e_null");
  const LabeledDataset ds_null = extract_corpus_dataset(dir_null, 0.0, 7, 60);
  const EvalReport null_report = cross_validate(
      ds_null, Task::classify, ModelKind::gbm, {.k = 5, .seed = 7});
  c.expect(std::abs(null_report.aggregate_cls.accuracy - 0.5) <= 0.15,
           "separation 0 accuracy " +
               std::to_string(null_report.aggregate_cls.accuracy) +
               " outside 0.5 +- 0.15");

  const EvalReport reg = cross_validate(ds_hi, Task::regress, ModelKind::gbm,
                                        {.k = 5, .seed = 7});
  c.expect(reg.aggregate_reg.r2 >= 0.6,
           "regression R2 " + std::to_string(reg.aggregate_reg.r2) +
               " < 0.6");
}

void criterion_determinism(Criterion& c) {
  const auto dir = testsupport::temp_dir("acc_det");
  CorpusSpec spec;
  spec.n_clips = 20;
  spec.separation = 1.0;
  spec.seed = 99;
  synth_corpus(spec, dir);

  const auto f1 = dir / "f1.csv";
  const auto f2 = dir / "f2.csv";
  cmd_extract({dir / "manifest.csv", f1, {}, false});
  cmd_extract({dir / "manifest.csv", f2, {}, false});
  c.expect(testsupport::slurp(f1) == testsupport::slurp(f2),
           "feature CSVs differ between runs");

  EvaluateOptions opts;
  opts.features_path = f1;
  opts.manifest_path = dir / "manifest.csv";
  opts.cv.seed = 5;
  opts.out_path = dir / "r1.json";
  cmd_evaluate(opts);
  opts.out_path = dir / "r2.json";
  cmd_evaluate(opts);
  c.expect(testsupport::slurp(dir / "r1.json") ==
               testsupport::slurp(dir / "r2.json"),
           "reports differ between runs");
}

void criterion_fold_plan(Criterion& c) {
  std::vector<int> labels(44, 0);
  for (std::size_t i = 0; i < 26; ++i) {
    labels[i] = 1;
  }
  const FoldPlan plan = kfold_split(44, labels, 5, 12);
  auto sizes = plan.fold_sizes();
  std::sort(sizes.begin(), sizes.end());
  c.expect(sizes == std::vector<std::size_t>({8, 9, 9, 9, 9}),
           "fold sizes are not {9,9,9,9,8}");

  std::vector<int> positives(5, 0);
  for (std::size_t i = 0; i < 44; ++i) {
    if (labels[i] == 1) {
      ++positives[static_cast<std::size_t>(plan.assignments[i])];
    }
  }
  const auto [lo, hi] =
      std::minmax_element(positives.begin(), positives.end());
  c.expect(*hi - *lo <= 1, "per-fold positive counts differ by more than 1");
}

}  // namespace

int main() {
  run(1, "DSP analytic suite", criterion_dsp);
  run(2, "CART oracle equivalence (200 random datasets)",
      criterion_cart_oracle);
  run(3, "GBM contracts (loss, separability, init, MDI)", criterion_gbm);
  run(4, "metric arithmetic", criterion_metrics);
  run(5, "prosody ground truth on a 30-clip corpus", criterion_prosody);
  run(6, "end-to-end screening on synthetic corpora", criterion_end_to_end);
  run(7, "byte-identical extract + evaluate", criterion_determinism);
  run(8, "n=44 k=5 stratified fold plan", criterion_fold_plan);

  if (g_failed == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failed);
  }
  return g_failed;
}
