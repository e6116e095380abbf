#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "speechml/crossval.hpp"
#include "speechml/csvio.hpp"
#include "speechml/features.hpp"
#include "speechml/synth.hpp"

namespace speechml {

struct ExtractOptions {
  std::filesystem::path manifest_path;
  std::filesystem::path out_path;
  AnalysisConfig analysis;
  bool skip_bad = false;
};

struct EvaluateOptions {
  std::filesystem::path features_path;
  std::filesystem::path manifest_path;
  std::filesystem::path out_path;
  Task task = Task::classify;
  ModelKind model = ModelKind::gbm;
  CvOptions cv;
};

enum class ReportWhat { correlate, importance };

struct ReportOptions {
  std::filesystem::path features_path;
  std::filesystem::path manifest_path;  // required for importance
  std::filesystem::path out_path;
  ReportWhat what = ReportWhat::correlate;
  Task task = Task::regress;  // importance defaults to the regression model
  int top_k = 10;
  CvOptions cv;
};

struct SynthOptions {
  std::filesystem::path out_dir;
  CorpusSpec corpus;
};

/// Extract one feature row per manifest id, in manifest order. Bad files
/// abort unless skip_bad is set, in which case they are reported to stderr
/// and skipped. Returns the number of rows written.
std::size_t cmd_extract(const ExtractOptions& options);

/// Cross-validate and write the report document. Returns the report.
EvalReport cmd_evaluate(const EvaluateOptions& options);

void cmd_report(const ReportOptions& options);

CorpusResult cmd_synth(const SynthOptions& options);

/// Join a feature table with a manifest by id (order follows the manifest).
LabeledDataset join_dataset(const FeatureTable& table,
                            const Manifest& manifest);

nlohmann::json report_to_json(const EvalReport& report);

}  // namespace speechml
