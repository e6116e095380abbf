#include "speechml/cli.hpp"

#include <algorithm>
#include <iostream>
#include <map>

#include "speechml/audio.hpp"
#include "speechml/errors.hpp"
#include "speechml/model_io.hpp"

namespace speechml {

namespace {

using json = nlohmann::json;

json correlation_to_json(const CorrelationMatrix& corr) {
  json rows = json::array();
  for (std::size_t i = 0; i < corr.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < corr.dim(); ++j) {
      row.push_back(corr.at(i, j));
    }
    rows.push_back(std::move(row));
  }
  json constants = json::array();
  for (std::size_t i = 0; i < corr.dim(); ++i) {
    if (corr.constant_feature[i]) {
      constants.push_back(corr.names[i]);
    }
  }
  return json{{"features", corr.names},
              {"matrix", std::move(rows)},
              {"constant_features", std::move(constants)}};
}

json importance_to_json(
    const std::vector<std::pair<std::string, double>>& ranking, int top_k) {
  json all = json::array();
  for (const auto& [name, score] : ranking) {
    all.push_back({{"feature", name}, {"score", score}});
  }
  const auto k = std::min<std::size_t>(ranking.size(),
                                       static_cast<std::size_t>(top_k));
  json top = json::array();
  for (std::size_t i = 0; i < k; ++i) {
    top.push_back({{"feature", ranking[i].first},
                   {"score", ranking[i].second}});
  }
  return json{{"ranking", std::move(all)}, {"top", std::move(top)}};
}

}  // namespace

LabeledDataset join_dataset(const FeatureTable& table,
                            const Manifest& manifest) {
  if (table.ids.size() != manifest.rows.size()) {
    throw IdMismatch("feature table has " + std::to_string(table.ids.size()) +
                     " ids, manifest has " +
                     std::to_string(manifest.rows.size()));
  }
  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < table.ids.size(); ++i) {
    by_id.emplace(table.ids[i], i);
  }

  LabeledDataset ds;
  ds.feature_names = feature_schema();
  ds.x = DataMatrix(manifest.rows.size(), table.values.cols);
  for (std::size_t i = 0; i < manifest.rows.size(); ++i) {
    const ManifestRow& row = manifest.rows[i];
    const auto it = by_id.find(row.id);
    if (it == by_id.end()) {
      throw IdMismatch("manifest id missing from feature table: " + row.id);
    }
    const auto src = table.values.row(it->second);
    std::copy(src.begin(), src.end(),
              ds.x.values.begin() +
                  static_cast<std::ptrdiff_t>(i * ds.x.cols));
    ds.ids.push_back(row.id);
    ds.labels.push_back(row.label);
    ds.scores.push_back(row.score);
  }
  return ds;
}

std::size_t cmd_extract(const ExtractOptions& options) {
  const Manifest manifest = read_manifest(options.manifest_path);
  if (manifest.rows.empty()) {
    throw EmptyInput("manifest has no rows: " +
                     options.manifest_path.string());
  }

  FeatureTable table;
  std::vector<FeatureVector> vectors;
  for (const ManifestRow& row : manifest.rows) {
    const auto wav_path = manifest.resolve_path(row);
    try {
      if (!std::filesystem::exists(wav_path)) {
        throw FileNotFound("id " + row.id + ": missing WAV file " +
                           wav_path.string());
      }
      const AudioSignal signal = load_wav(wav_path);
      vectors.push_back(extract_features(signal, options.analysis));
      table.ids.push_back(row.id);
    } catch (const Error& e) {
      if (!options.skip_bad) {
        throw;
      }
      std::cerr << "skipping " << row.id << ": " << e.what() << "\n";
    }
  }
  if (table.ids.empty()) {
    throw EmptyInput("no recordings could be extracted");
  }

  table.values = DataMatrix(vectors.size(), kFeatureCount);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    std::copy(vectors[i].begin(), vectors[i].end(),
              table.values.values.begin() +
                  static_cast<std::ptrdiff_t>(i * kFeatureCount));
  }
  write_feature_table(options.out_path, table);
  return table.ids.size();
}

EvalReport cmd_evaluate(const EvaluateOptions& options) {
  const FeatureTable table = read_feature_table(options.features_path);
  const Manifest manifest = read_manifest(options.manifest_path);
  const LabeledDataset dataset = join_dataset(table, manifest);

  const EvalReport report =
      cross_validate(dataset, options.task, options.model, options.cv);
  write_text_file(options.out_path, report_to_json(report).dump(2) + "\n");
  return report;
}

void cmd_report(const ReportOptions& options) {
  const FeatureTable table = read_feature_table(options.features_path);

  json document;
  document["format"] = "speechml-report";
  document["version"] = 1;

  if (options.what == ReportWhat::correlate) {
    document["what"] = "correlate";
    document["correlation"] =
        correlation_to_json(pearson_matrix(table.values, feature_schema()));
  } else {
    if (options.manifest_path.empty()) {
      throw InvalidArgument("importance report needs a manifest");
    }
    const Manifest manifest = read_manifest(options.manifest_path);
    const LabeledDataset dataset = join_dataset(table, manifest);

    TreeEnsembleModel model;
    if (options.task == Task::regress) {
      model = gbm_fit(dataset.x, dataset.scores, GbmLoss::squared,
                      options.cv.gbm, dataset.feature_names);
    } else {
      std::vector<double> targets(dataset.labels.begin(),
                                  dataset.labels.end());
      model = gbm_fit(dataset.x, targets, GbmLoss::logistic, options.cv.gbm,
                      dataset.feature_names);
    }
    const std::vector<double> scores = mdi_importance(model);
    std::vector<std::pair<std::string, double>> ranking;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      ranking.emplace_back(model.feature_schema[j], scores[j]);
    }
    std::stable_sort(
        ranking.begin(), ranking.end(),
        [](const auto& a, const auto& b) { return a.second > b.second; });

    document["what"] = "importance";
    document["task"] = to_string(options.task);
    document["model"] = "gbm";
    document["importance"] = importance_to_json(ranking, options.top_k);
  }
  write_text_file(options.out_path, document.dump(2) + "\n");
}

CorpusResult cmd_synth(const SynthOptions& options) {
  return synth_corpus(options.corpus, options.out_dir);
}

json report_to_json(const EvalReport& report) {
  json j;
  j["format"] = "speechml-report";
  j["version"] = 1;
  j["what"] = "evaluate";
  j["task"] = to_string(report.task);
  j["model"] = to_string(report.model);
  j["seed"] = report.seed;
  j["k"] = report.k;
  j["fold_sizes"] = report.fold_sizes;

  json folds = json::array();
  for (const FoldResult& fr : report.per_fold) {
    json jf{{"fold", fr.fold}};
    if (report.task == Task::classify) {
      jf["accuracy"] = fr.cls.accuracy;
      jf["precision"] = fr.cls.precision;
      jf["recall"] = fr.cls.recall;
      jf["f1"] = fr.cls.f1;
      jf["confusion"] = {{"tp", fr.confusion.tp},
                         {"fp", fr.confusion.fp},
                         {"fn", fr.confusion.fn},
                         {"tn", fr.confusion.tn}};
    } else {
      jf["mae"] = fr.reg.mae;
      jf["mse"] = fr.reg.mse;
      jf["r2"] = fr.reg.r2;
    }
    folds.push_back(std::move(jf));
  }
  j["per_fold"] = std::move(folds);

  if (report.task == Task::classify) {
    j["aggregate"] = {{"accuracy", report.aggregate_cls.accuracy},
                      {"precision", report.aggregate_cls.precision},
                      {"recall", report.aggregate_cls.recall},
                      {"f1", report.aggregate_cls.f1}};
    j["pooled_accuracy"] = report.pooled_accuracy;
    j["confusion"] = {{"tp", report.confusion.tp},
                      {"fp", report.confusion.fp},
                      {"fn", report.confusion.fn},
                      {"tn", report.confusion.tn}};
  } else {
    j["aggregate"] = {{"mae", report.aggregate_reg.mae},
                      {"mse", report.aggregate_reg.mse},
                      {"r2", report.aggregate_reg.r2}};
  }

  j["correlation"] = correlation_to_json(report.correlation);
  if (report.importance_available) {
    j["importance"] = importance_to_json(report.importance, 10);
  }
  return j;
}

}  // namespace speechml
