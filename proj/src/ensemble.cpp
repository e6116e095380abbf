#include "speechml/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "speechml/errors.hpp"
#include "speechml/rng.hpp"

namespace speechml {

namespace {

constexpr double kNewtonDenomFloor = 1e-12;
constexpr double kErrorFloor = 1e-10;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::vector<std::string> default_schema(std::size_t d,
                                        std::vector<std::string> given) {
  if (!given.empty()) {
    if (given.size() != d) {
      throw DimensionMismatch("feature schema size does not match data");
    }
    return given;
  }
  std::vector<std::string> names(d);
  for (std::size_t i = 0; i < d; ++i) {
    names[i] = "x" + std::to_string(i);
  }
  return names;
}

void check_binary_labels(std::span<const int> labels) {
  bool has0 = false, has1 = false;
  for (int y : labels) {
    if (y == 0) {
      has0 = true;
    } else if (y == 1) {
      has1 = true;
    } else {
      throw InvalidArgument("labels must be 0 or 1");
    }
  }
  if (!has0 || !has1) {
    throw SingleClass("training data contains a single class");
  }
}

double logistic_loss(std::span<const double> scores,
                     std::span<const double> targets) {
  double acc = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double p = std::clamp(sigmoid(scores[i]), 1e-15, 1.0 - 1e-15);
    acc -= targets[i] * std::log(p) + (1.0 - targets[i]) * std::log(1.0 - p);
  }
  return acc / static_cast<double>(scores.size());
}

double squared_loss(std::span<const double> scores,
                    std::span<const double> targets) {
  double acc = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double d = scores[i] - targets[i];
    acc += d * d;
  }
  return acc / static_cast<double>(scores.size());
}

}  // namespace

TreeEnsembleModel gbm_fit(const DataMatrix& data,
                          std::span<const double> targets, GbmLoss loss,
                          const GbmParams& params,
                          std::vector<std::string> feature_schema) {
  if (targets.size() != data.rows) {
    throw DimensionMismatch("gbm_fit: targets length does not match rows");
  }
  if (data.rows < 2) {
    throw EmptyInput("gbm_fit: need at least two samples");
  }
  const std::size_t n = data.rows;

  TreeEnsembleModel model;
  model.kind = loss == GbmLoss::logistic ? EnsembleKind::gbm_classifier
                                         : EnsembleKind::gbm_regressor;
  model.learning_rate = params.learning_rate;
  model.n_estimators = params.n_estimators;
  model.max_depth = params.max_depth;
  model.min_samples_split = params.min_samples_split;
  model.min_samples_leaf = params.min_samples_leaf;
  model.feature_schema = default_schema(data.cols, std::move(feature_schema));

  if (loss == GbmLoss::logistic) {
    std::vector<int> as_labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (targets[i] != 0.0 && targets[i] != 1.0) {
        throw InvalidArgument("gbm_fit: logistic loss needs 0/1 labels");
      }
      as_labels[i] = static_cast<int>(targets[i]);
    }
    check_binary_labels(as_labels);
    const double p_bar =
        std::accumulate(targets.begin(), targets.end(), 0.0) /
        static_cast<double>(n);
    model.init_value = std::log(p_bar / (1.0 - p_bar));
  } else {
    model.init_value = std::accumulate(targets.begin(), targets.end(), 0.0) /
                       static_cast<double>(n);
  }

  std::vector<double> score(n, model.init_value);
  std::vector<double> residual(n);
  const std::vector<double> unit_weights(n, 1.0);
  const CartParams tree_params{params.max_depth, params.min_samples_split,
                               params.min_samples_leaf, 0, nullptr};

  auto loss_now = [&] {
    return loss == GbmLoss::logistic ? logistic_loss(score, targets)
                                     : squared_loss(score, targets);
  };
  model.training_loss.push_back(loss_now());

  for (int stage = 0; stage < params.n_estimators; ++stage) {
    for (std::size_t i = 0; i < n; ++i) {
      const double fitted = loss == GbmLoss::logistic ? sigmoid(score[i])
                                                      : score[i];
      residual[i] = targets[i] - fitted;
    }
    CartTree tree = build_cart(data, residual, unit_weights, tree_params);

    if (loss == GbmLoss::logistic) {
      // Replace leaf means with the one-step Newton value over leaf samples.
      std::vector<double> num(tree.nodes.size(), 0.0);
      std::vector<double> den(tree.nodes.size(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto leaf =
            static_cast<std::size_t>(tree.leaf_index(data.row(i)));
        const double p = sigmoid(score[i]);
        num[leaf] += residual[i];
        den[leaf] += p * (1.0 - p);
      }
      for (std::size_t j = 0; j < tree.nodes.size(); ++j) {
        if (tree.nodes[j].feature < 0 && tree.nodes[j].n_samples > 0) {
          tree.nodes[j].value =
              num[j] / std::max(den[j], kNewtonDenomFloor);
        }
      }
    }

    for (std::size_t i = 0; i < n; ++i) {
      score[i] += params.learning_rate * tree.predict(data.row(i));
    }
    model.trees.push_back(std::move(tree));
    model.stage_weights.push_back(params.learning_rate);
    model.training_loss.push_back(loss_now());
  }
  return model;
}

TreeEnsembleModel fit_random_forest(const DataMatrix& data,
                                    std::span<const int> labels,
                                    std::uint64_t seed,
                                    const RandomForestParams& params,
                                    std::vector<std::string> feature_schema) {
  if (labels.size() != data.rows) {
    throw DimensionMismatch("fit_random_forest: labels do not match rows");
  }
  if (data.rows < 2) {
    throw EmptyInput("fit_random_forest: need at least two samples");
  }
  check_binary_labels(labels);

  TreeEnsembleModel model;
  model.kind = EnsembleKind::random_forest;
  model.seed = seed;
  model.n_estimators = params.n_trees;
  model.max_depth = params.max_depth;
  model.min_samples_split = params.min_samples_split;
  model.min_samples_leaf = params.min_samples_leaf;
  model.feature_schema = default_schema(data.cols, std::move(feature_schema));

  const std::size_t n = data.rows;
  const int d = static_cast<int>(data.cols);
  const int mtry =
      params.mtry > 0
          ? std::min(params.mtry, d)
          : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));

  std::vector<double> targets(n);
  for (std::size_t i = 0; i < n; ++i) {
    targets[i] = static_cast<double>(labels[i]);
  }
  const std::vector<double> unit_weights(n, 1.0);

  for (int t = 0; t < params.n_trees; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<std::size_t> rows(n);
    if (params.bootstrap) {
      for (std::size_t i = 0; i < n; ++i) {
        rows[i] = next_index(rng, n);
      }
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    CartParams tree_params{params.max_depth, params.min_samples_split,
                           params.min_samples_leaf, mtry < d ? mtry : 0,
                           &rng};
    model.trees.push_back(
        build_cart_on_rows(data, targets, unit_weights, rows, tree_params));
    model.stage_weights.push_back(1.0);
  }
  return model;
}

TreeEnsembleModel fit_adaboost(const DataMatrix& data,
                               std::span<const int> labels,
                               const AdaBoostParams& params,
                               std::vector<std::string> feature_schema) {
  if (labels.size() != data.rows) {
    throw DimensionMismatch("fit_adaboost: labels do not match rows");
  }
  if (data.rows < 2) {
    throw EmptyInput("fit_adaboost: need at least two samples");
  }
  check_binary_labels(labels);

  TreeEnsembleModel model;
  model.kind = EnsembleKind::adaboost;
  model.n_estimators = params.n_stumps;
  model.max_depth = 1;
  model.feature_schema = default_schema(data.cols, std::move(feature_schema));

  const std::size_t n = data.rows;
  std::vector<double> targets(n), weights(n, 1.0 / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    targets[i] = static_cast<double>(labels[i]);
  }
  const CartParams stump_params{1, 2, 1, 0, nullptr};

  for (int stage = 0; stage < params.n_stumps; ++stage) {
    CartTree stump = build_cart(data, targets, weights, stump_params);

    double eps = 0.0;
    std::vector<int> predicted(n);
    for (std::size_t i = 0; i < n; ++i) {
      predicted[i] = stump.predict(data.row(i)) >= 0.5 ? 1 : 0;
      if (predicted[i] != labels[i]) {
        eps += weights[i];
      }
    }
    if (eps >= 0.5) {
      break;  // weak learner no better than chance
    }
    const double eps_c = std::clamp(eps, kErrorFloor, 1.0 - kErrorFloor);
    const double alpha = 0.5 * std::log((1.0 - eps_c) / eps_c);

    model.trees.push_back(std::move(stump));
    model.stage_weights.push_back(alpha);
    if (eps <= kErrorFloor) {
      break;  // perfect stump, later rounds would only repeat it
    }

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double agree = predicted[i] == labels[i] ? 1.0 : -1.0;
      weights[i] *= std::exp(-alpha * agree);
      total += weights[i];
    }
    for (double& w : weights) {
      w /= total;
    }
  }
  return model;
}

double ensemble_predict(const TreeEnsembleModel& model,
                        std::span<const double> row) {
  if (row.size() != model.n_features()) {
    throw DimensionMismatch("ensemble_predict: row arity " +
                            std::to_string(row.size()) + " != schema " +
                            std::to_string(model.n_features()));
  }
  switch (model.kind) {
    case EnsembleKind::gbm_classifier:
    case EnsembleKind::gbm_regressor: {
      double f = model.init_value;
      for (std::size_t t = 0; t < model.trees.size(); ++t) {
        f += model.stage_weights[t] * model.trees[t].predict(row);
      }
      return model.kind == EnsembleKind::gbm_classifier ? sigmoid(f) : f;
    }
    case EnsembleKind::random_forest: {
      if (model.trees.empty()) {
        return 0.0;
      }
      double votes = 0.0;
      for (const CartTree& tree : model.trees) {
        votes += tree.predict(row) >= 0.5 ? 1.0 : 0.0;
      }
      return votes / static_cast<double>(model.trees.size());
    }
    case EnsembleKind::adaboost: {
      double score = 0.0;
      for (std::size_t t = 0; t < model.trees.size(); ++t) {
        const double vote = model.trees[t].predict(row) >= 0.5 ? 1.0 : -1.0;
        score += model.stage_weights[t] * vote;
      }
      return score >= 0.0 ? 1.0 : 0.0;
    }
  }
  throw InvalidArgument("ensemble_predict: unknown model kind");
}

std::vector<double> mdi_importance(const TreeEnsembleModel& model) {
  std::vector<double> scores(model.n_features(), 0.0);
  bool any_split = false;
  for (const CartTree& tree : model.trees) {
    if (tree.nodes.empty()) {
      continue;
    }
    const double w_root = tree.nodes.front().weight;
    if (w_root <= 0.0) {
      continue;
    }
    for (const TreeNode& node : tree.nodes) {
      if (node.feature < 0) {
        continue;
      }
      any_split = true;
      scores[static_cast<std::size_t>(node.feature)] +=
          (node.weight / w_root) * node.impurity_decrease;
    }
  }
  if (!any_split) {
    throw NoSplits("mdi_importance: every tree is a single leaf");
  }
  const double total = std::accumulate(scores.begin(), scores.end(), 0.0);
  if (total > 0.0) {
    for (double& s : scores) {
      s /= total;
    }
  }
  return scores;
}

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::gbm_classifier:
      return "gbm_classifier";
    case EnsembleKind::gbm_regressor:
      return "gbm_regressor";
    case EnsembleKind::random_forest:
      return "random_forest";
    case EnsembleKind::adaboost:
      return "adaboost";
  }
  return "unknown";
}

EnsembleKind ensemble_kind_from_string(const std::string& s) {
  if (s == "gbm_classifier") return EnsembleKind::gbm_classifier;
  if (s == "gbm_regressor") return EnsembleKind::gbm_regressor;
  if (s == "random_forest") return EnsembleKind::random_forest;
  if (s == "adaboost") return EnsembleKind::adaboost;
  throw ParseError("unknown ensemble kind: " + s);
}

}  // namespace speechml
