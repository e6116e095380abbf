// speechml: extract prosodic/spectral features from WAV recordings, train
// tree-ensemble models with cross-validation, and emit analysis reports.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "speechml/cli.hpp"
#include "speechml/errors.hpp"

namespace {

void add_analysis_flags(CLI::App* cmd, speechml::AnalysisConfig* cfg) {
  cmd->add_option("--frame-ms", cfg->frame_ms, "Analysis frame length (ms)")
      ->capture_default_str();
  cmd->add_option("--hop-ms", cfg->hop_ms, "Analysis hop (ms)")
      ->capture_default_str();
  cmd->add_option("--min-pause-s", cfg->min_pause_s,
                  "Minimum silent run counted as a pause (s)")
      ->capture_default_str();
  cmd->add_option("--silence-db", cfg->silence_db_below_peak,
                  "Silence threshold below peak intensity (dB)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"speech pattern analysis toolkit"};
  app.require_subcommand(1);

  speechml::ExtractOptions extract;
  auto* cmd_extract = app.add_subcommand(
      "extract", "Extract feature vectors for every manifest recording");
  cmd_extract->add_option("--manifest", extract.manifest_path,
                          "Input manifest CSV (id,path,label,score)")
      ->required();
  cmd_extract->add_option("--out", extract.out_path, "Output feature CSV")
      ->required();
  cmd_extract->add_flag("--skip-bad", extract.skip_bad,
                        "Skip unreadable recordings instead of aborting");
  add_analysis_flags(cmd_extract, &extract.analysis);

  speechml::EvaluateOptions evaluate;
  std::string eval_task = "classify", eval_model = "gbm";
  auto* cmd_evaluate = app.add_subcommand(
      "evaluate", "Cross-validate a model over extracted features");
  cmd_evaluate->add_option("--features", evaluate.features_path,
                           "Feature CSV from 'extract'")
      ->required();
  cmd_evaluate->add_option("--manifest", evaluate.manifest_path,
                           "Manifest CSV with labels and scores")
      ->required();
  cmd_evaluate->add_option("--out", evaluate.out_path, "Output report JSON")
      ->required();
  cmd_evaluate->add_option("--task", eval_task, "classify | regress")
      ->capture_default_str();
  cmd_evaluate->add_option("--model", eval_model,
                           "gbm | rf | adaboost | gnb")
      ->capture_default_str();
  cmd_evaluate->add_option("--seed", evaluate.cv.seed, "Random seed")
      ->capture_default_str();
  cmd_evaluate->add_option("--folds", evaluate.cv.k, "Fold count")
      ->capture_default_str();

  speechml::ReportOptions report;
  std::string report_what = "correlate", report_task = "regress";
  auto* cmd_report = app.add_subcommand(
      "report", "Correlation or feature-importance documents");
  cmd_report->add_option("--features", report.features_path, "Feature CSV")
      ->required();
  cmd_report->add_option("--out", report.out_path, "Output JSON document")
      ->required();
  cmd_report->add_option("--what", report_what, "correlate | importance")
      ->capture_default_str();
  cmd_report->add_option("--manifest", report.manifest_path,
                         "Manifest CSV (required for importance)");
  cmd_report->add_option("--task", report_task,
                         "Importance model target: classify | regress")
      ->capture_default_str();
  cmd_report->add_option("--top", report.top_k, "Entries in the top listing")
      ->capture_default_str();
  cmd_report->add_option("--seed", report.cv.seed, "Random seed")
      ->capture_default_str();

  speechml::SynthOptions synth;
  auto* cmd_synth = app.add_subcommand(
      "synth", "Generate a synthetic labeled corpus of speech-like clips");
  cmd_synth->add_option("--out-dir", synth.out_dir, "Output directory")
      ->required();
  cmd_synth->add_option("--n-clips", synth.corpus.n_clips, "Clip count")
      ->capture_default_str();
  cmd_synth->add_option("--balance", synth.corpus.class_balance,
                        "Fraction of positive clips")
      ->capture_default_str();
  cmd_synth->add_option("--separation", synth.corpus.separation,
                        "Class contrast strength (0 = none)")
      ->capture_default_str();
  cmd_synth->add_option("--seed", synth.corpus.seed, "Random seed")
      ->capture_default_str();
  cmd_synth->add_option("--sample-rate", synth.corpus.sample_rate,
                        "Output sample rate (Hz)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_extract->parsed()) {
      const std::size_t n = speechml::cmd_extract(extract);
      std::cout << "wrote " << n << " feature rows to "
                << extract.out_path.string() << "\n";
    } else if (cmd_evaluate->parsed()) {
      evaluate.task = speechml::task_from_string(eval_task);
      evaluate.model = speechml::model_kind_from_string(eval_model);
      const auto rep = speechml::cmd_evaluate(evaluate);
      if (rep.task == speechml::Task::classify) {
        std::cout << "accuracy " << rep.aggregate_cls.accuracy << ", f1 "
                  << rep.aggregate_cls.f1 << " -> "
                  << evaluate.out_path.string() << "\n";
      } else {
        std::cout << "r2 " << rep.aggregate_reg.r2 << ", mae "
                  << rep.aggregate_reg.mae << " -> "
                  << evaluate.out_path.string() << "\n";
      }
    } else if (cmd_report->parsed()) {
      if (report_what == "correlate") {
        report.what = speechml::ReportWhat::correlate;
      } else if (report_what == "importance") {
        report.what = speechml::ReportWhat::importance;
      } else {
        std::cerr << "unknown --what: " << report_what << "\n";
        return 1;
      }
      report.task = speechml::task_from_string(report_task);
      speechml::cmd_report(report);
      std::cout << "wrote " << report.out_path.string() << "\n";
    } else if (cmd_synth->parsed()) {
      const auto result = speechml::cmd_synth(synth);
      std::cout << "wrote " << result.clips.size() << " clips and "
                << result.manifest_path.string() << "\n";
    }
  } catch (const speechml::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const speechml::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
