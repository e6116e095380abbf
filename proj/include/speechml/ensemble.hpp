#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "speechml/cart.hpp"
#include "speechml/dataset.hpp"

namespace speechml {

enum class EnsembleKind {
  gbm_classifier,
  gbm_regressor,
  random_forest,
  adaboost,
};

enum class GbmLoss { logistic, squared };

struct GbmParams {
  int n_estimators = 100;
  double learning_rate = 0.1;
  int max_depth = 3;
  int min_samples_split = 2;
  int min_samples_leaf = 1;
};

struct RandomForestParams {
  int n_trees = 100;
  int max_depth = -1;  // unlimited
  int mtry = 0;        // 0 = ceil(sqrt(d))
  bool bootstrap = true;
  int min_samples_split = 2;
  int min_samples_leaf = 1;
};

struct AdaBoostParams {
  int n_stumps = 100;
};

/// Trained CART ensemble. Prediction semantics depend on kind:
/// gbm_classifier -> sigmoid(F0 + lr * sum tree), gbm_regressor -> F0 + lr *
/// sum tree, random_forest -> mean of hard tree votes, adaboost -> sign of the
/// alpha-weighted vote mapped to {0, 1}.
struct TreeEnsembleModel {
  EnsembleKind kind = EnsembleKind::gbm_classifier;
  std::vector<CartTree> trees;
  std::vector<double> stage_weights;  // learning rate (gbm) or alpha (ada)
  double init_value = 0.0;
  double learning_rate = 0.0;
  std::vector<std::string> feature_schema;
  std::uint64_t seed = 0;
  // hyperparameters, kept for the serialized artifact
  int n_estimators = 0;
  int max_depth = 0;
  int min_samples_split = 2;
  int min_samples_leaf = 1;
  // per-stage training loss (gbm only); element 0 is the init-only loss
  std::vector<double> training_loss;

  std::size_t n_features() const { return feature_schema.size(); }
};

/// Stagewise boosting on squared or logistic loss. Logistic leaves use the
/// Newton step over leaf samples; F0 = ln(p/(1-p)) resp. mean target.
TreeEnsembleModel gbm_fit(const DataMatrix& data,
                          std::span<const double> targets, GbmLoss loss,
                          const GbmParams& params = {},
                          std::vector<std::string> feature_schema = {});

TreeEnsembleModel fit_random_forest(const DataMatrix& data,
                                    std::span<const int> labels,
                                    std::uint64_t seed,
                                    const RandomForestParams& params = {},
                                    std::vector<std::string> feature_schema =
                                        {});

/// Discrete (SAMME-style) AdaBoost over depth-1 stumps.
TreeEnsembleModel fit_adaboost(const DataMatrix& data,
                               std::span<const int> labels,
                               const AdaBoostParams& params = {},
                               std::vector<std::string> feature_schema = {});

/// Probability for classifier kinds, value for the regressor.
double ensemble_predict(const TreeEnsembleModel& model,
                        std::span<const double> row);

inline int predicted_label(double probability) {
  return probability >= 0.5 ? 1 : 0;
}

/// Mean-decrease-in-impurity scores per feature, normalized to sum 1.
/// Throws NoSplits when every tree is a single leaf.
std::vector<double> mdi_importance(const TreeEnsembleModel& model);

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& s);

}  // namespace speechml
