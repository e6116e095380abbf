#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "speechml/dataset.hpp"
#include "speechml/ensemble.hpp"
#include "speechml/metrics.hpp"

namespace speechml {

enum class Task { classify, regress };
enum class ModelKind { gbm, random_forest, adaboost, gaussian_nb };

struct FoldPlan {
  int k = 0;
  std::vector<int> assignments;  // per-sample fold index
  std::uint64_t seed = 0;
  bool stratified = false;

  std::vector<std::size_t> fold_indices(int fold) const;
  std::vector<std::size_t> train_indices(int fold) const;
  std::vector<std::size_t> fold_sizes() const;
};

/// Seeded shuffle then round-robin assignment, within each class when
/// stratified. Fold sizes differ by at most one.
FoldPlan kfold_split(std::size_t n, std::span<const int> labels, int k,
                     std::uint64_t seed);
FoldPlan kfold_split(std::size_t n, int k, std::uint64_t seed);

struct CvOptions {
  int k = 5;
  std::uint64_t seed = 0;
  GbmParams gbm;
  RandomForestParams forest;
  AdaBoostParams adaboost;
};

struct FoldResult {
  int fold = 0;
  ConfusionCounts confusion;        // classify
  ClassificationMetrics cls;        // classify
  RegressionMetrics reg;            // regress
};

struct EvalReport {
  Task task = Task::classify;
  ModelKind model = ModelKind::gbm;
  std::uint64_t seed = 0;
  int k = 0;
  std::vector<std::size_t> fold_sizes;

  std::vector<FoldResult> per_fold;
  ClassificationMetrics aggregate_cls;  // mean of per-fold metrics
  RegressionMetrics aggregate_reg;
  ConfusionCounts confusion;            // summed over folds
  double pooled_accuracy = 0.0;         // from the summed confusion

  CorrelationMatrix correlation;
  std::vector<std::pair<std::string, double>> importance;  // sorted desc
  bool importance_available = false;
};

/// Per fold: fit on the other k-1 folds, predict the held-out fold. Metrics
/// are averaged over folds, confusion counts summed, and the importance
/// ranking comes from refitting on the full dataset. Regression is defined
/// for the gbm model only.
EvalReport cross_validate(const LabeledDataset& dataset, Task task,
                          ModelKind model, const CvOptions& options);

std::string to_string(Task task);
std::string to_string(ModelKind kind);
Task task_from_string(const std::string& s);
ModelKind model_kind_from_string(const std::string& s);

}  // namespace speechml
