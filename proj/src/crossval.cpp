#include "speechml/crossval.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "speechml/naive_bayes.hpp"
#include "speechml/rng.hpp"

namespace speechml {

namespace {

DataMatrix rows_subset(const DataMatrix& x,
                       std::span<const std::size_t> rows) {
  DataMatrix out(rows.size(), x.cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = x.row(rows[i]);
    std::copy(src.begin(), src.end(),
              out.values.begin() + static_cast<std::ptrdiff_t>(i * x.cols));
  }
  return out;
}

}  // namespace

std::vector<std::size_t> FoldPlan::fold_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] == fold) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<std::size_t> FoldPlan::train_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] != fold) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<std::size_t> FoldPlan::fold_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
  for (int a : assignments) {
    ++sizes[static_cast<std::size_t>(a)];
  }
  return sizes;
}

FoldPlan kfold_split(std::size_t n, std::span<const int> labels, int k,
                     std::uint64_t seed) {
  if (k < 2) {
    throw InvalidArgument("kfold_split: k must be >= 2");
  }
  if (n < static_cast<std::size_t>(k)) {
    throw TooFewSamples("kfold_split: fewer samples than folds");
  }
  const bool stratified = !labels.empty();
  if (stratified && labels.size() != n) {
    throw DimensionMismatch("kfold_split: labels do not match n");
  }

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.stratified = stratified;
  plan.assignments.assign(n, 0);

  Rng rng(seed);
  std::size_t counter = 0;
  if (stratified) {
    // One global round-robin counter walked class by class keeps both the
    // per-class and the total fold sizes within one of each other.
    for (int cls = 0; cls < 2; ++cls) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] != 0 && labels[i] != 1) {
          throw InvalidArgument("kfold_split: labels must be 0 or 1");
        }
        if (labels[i] == cls) {
          members.push_back(i);
        }
      }
      shuffle_in_place(members, rng);
      for (std::size_t i : members) {
        plan.assignments[i] =
            static_cast<int>(counter++ % static_cast<std::size_t>(k));
      }
    }
  } else {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle_in_place(perm, rng);
    for (std::size_t i : perm) {
      plan.assignments[i] =
          static_cast<int>(counter++ % static_cast<std::size_t>(k));
    }
  }
  return plan;
}

FoldPlan kfold_split(std::size_t n, int k, std::uint64_t seed) {
  return kfold_split(n, std::span<const int>{}, k, seed);
}

EvalReport cross_validate(const LabeledDataset& dataset, Task task,
                          ModelKind model, const CvOptions& options) {
  const std::size_t n = dataset.size();
  if (n == 0 || dataset.x.cols == 0) {
    throw EmptyInput("cross_validate: empty dataset");
  }
  if (task == Task::classify && dataset.labels.size() != n) {
    throw DimensionMismatch("cross_validate: labels missing");
  }
  if (task == Task::regress && dataset.scores.size() != n) {
    throw DimensionMismatch("cross_validate: scores missing");
  }
  if (task == Task::regress && model != ModelKind::gbm) {
    throw InvalidArgument(
        "cross_validate: regression is defined for the gbm model only");
  }

  EvalReport report;
  report.task = task;
  report.model = model;
  report.seed = options.seed;
  report.k = options.k;

  const FoldPlan plan =
      task == Task::classify
          ? kfold_split(n, dataset.labels, options.k, options.seed)
          : kfold_split(n, options.k, options.seed);
  report.fold_sizes = plan.fold_sizes();

  auto fit_classifier = [&](const DataMatrix& xtr,
                            std::span<const int> ytr, int fold)
      -> std::function<double(std::span<const double>)> {
    switch (model) {
      case ModelKind::gbm: {
        std::vector<double> targets(ytr.begin(), ytr.end());
        auto m = gbm_fit(xtr, targets, GbmLoss::logistic, options.gbm,
                         dataset.feature_names);
        return [m = std::move(m)](std::span<const double> row) {
          return ensemble_predict(m, row);
        };
      }
      case ModelKind::random_forest: {
        auto m = fit_random_forest(
            xtr, ytr,
            derive_seed(options.seed, static_cast<std::uint64_t>(fold)),
            options.forest, dataset.feature_names);
        return [m = std::move(m)](std::span<const double> row) {
          return ensemble_predict(m, row);
        };
      }
      case ModelKind::adaboost: {
        auto m = fit_adaboost(xtr, ytr, options.adaboost,
                              dataset.feature_names);
        return [m = std::move(m)](std::span<const double> row) {
          return ensemble_predict(m, row);
        };
      }
      case ModelKind::gaussian_nb: {
        auto m = fit_gaussian_nb(xtr, ytr, dataset.feature_names);
        return [m = std::move(m)](std::span<const double> row) {
          return gaussian_nb_predict(m, row);
        };
      }
    }
    throw InvalidArgument("cross_validate: unknown model kind");
  };

  for (int fold = 0; fold < options.k; ++fold) {
    const auto train = plan.train_indices(fold);
    const auto test = plan.fold_indices(fold);
    const DataMatrix xtr = rows_subset(dataset.x, train);

    FoldResult fr;
    fr.fold = fold;
    if (task == Task::classify) {
      std::vector<int> ytr(train.size());
      for (std::size_t i = 0; i < train.size(); ++i) {
        ytr[i] = dataset.labels[train[i]];
      }
      const auto predict = fit_classifier(xtr, ytr, fold);
      for (std::size_t i : test) {
        const int predicted = predicted_label(predict(dataset.x.row(i)));
        const int actual = dataset.labels[i];
        if (predicted == 1 && actual == 1) ++fr.confusion.tp;
        else if (predicted == 1 && actual == 0) ++fr.confusion.fp;
        else if (predicted == 0 && actual == 1) ++fr.confusion.fn;
        else ++fr.confusion.tn;
      }
      fr.cls = classification_metrics(fr.confusion);
      report.confusion.tp += fr.confusion.tp;
      report.confusion.fp += fr.confusion.fp;
      report.confusion.fn += fr.confusion.fn;
      report.confusion.tn += fr.confusion.tn;
    } else {
      std::vector<double> ytr(train.size());
      for (std::size_t i = 0; i < train.size(); ++i) {
        ytr[i] = dataset.scores[train[i]];
      }
      const auto m = gbm_fit(xtr, ytr, GbmLoss::squared, options.gbm,
                             dataset.feature_names);
      std::vector<double> predicted, actual;
      predicted.reserve(test.size());
      actual.reserve(test.size());
      for (std::size_t i : test) {
        predicted.push_back(ensemble_predict(m, dataset.x.row(i)));
        actual.push_back(dataset.scores[i]);
      }
      fr.reg = regression_metrics(predicted, actual);
    }
    report.per_fold.push_back(fr);
  }

  const double inv_k = 1.0 / static_cast<double>(options.k);
  if (task == Task::classify) {
    for (const FoldResult& fr : report.per_fold) {
      report.aggregate_cls.accuracy += fr.cls.accuracy * inv_k;
      report.aggregate_cls.precision += fr.cls.precision * inv_k;
      report.aggregate_cls.recall += fr.cls.recall * inv_k;
      report.aggregate_cls.f1 += fr.cls.f1 * inv_k;
    }
    report.pooled_accuracy =
        static_cast<double>(report.confusion.tp + report.confusion.tn) /
        static_cast<double>(report.confusion.total());
  } else {
    for (const FoldResult& fr : report.per_fold) {
      report.aggregate_reg.mae += fr.reg.mae * inv_k;
      report.aggregate_reg.mse += fr.reg.mse * inv_k;
      report.aggregate_reg.r2 += fr.reg.r2 * inv_k;
      report.aggregate_reg.constant_actual |= fr.reg.constant_actual;
    }
  }

  report.correlation = pearson_matrix(dataset.x, dataset.feature_names);

  // Importance ranking from a refit on the full dataset.
  if (model != ModelKind::gaussian_nb) {
    TreeEnsembleModel full;
    if (model == ModelKind::gbm) {
      if (task == Task::classify) {
        std::vector<double> targets(dataset.labels.begin(),
                                    dataset.labels.end());
        full = gbm_fit(dataset.x, targets, GbmLoss::logistic, options.gbm,
                       dataset.feature_names);
      } else {
        full = gbm_fit(dataset.x, dataset.scores, GbmLoss::squared,
                       options.gbm, dataset.feature_names);
      }
    } else if (model == ModelKind::random_forest) {
      full = fit_random_forest(dataset.x, dataset.labels, options.seed,
                               options.forest, dataset.feature_names);
    } else {
      full = fit_adaboost(dataset.x, dataset.labels, options.adaboost,
                          dataset.feature_names);
    }
    const std::vector<double> scores = mdi_importance(full);
    for (std::size_t j = 0; j < scores.size(); ++j) {
      report.importance.emplace_back(full.feature_schema[j], scores[j]);
    }
    std::stable_sort(report.importance.begin(), report.importance.end(),
                     [](const auto& a, const auto& b) {
                       return a.second > b.second;
                     });
    report.importance_available = true;
  }
  return report;
}

std::string to_string(Task task) {
  return task == Task::classify ? "classify" : "regress";
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::gbm:
      return "gbm";
    case ModelKind::random_forest:
      return "rf";
    case ModelKind::adaboost:
      return "adaboost";
    case ModelKind::gaussian_nb:
      return "gnb";
  }
  return "unknown";
}

Task task_from_string(const std::string& s) {
  if (s == "classify") return Task::classify;
  if (s == "regress") return Task::regress;
  throw ParseError("unknown task: " + s);
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "gbm") return ModelKind::gbm;
  if (s == "rf") return ModelKind::random_forest;
  if (s == "adaboost") return ModelKind::adaboost;
  if (s == "gnb") return ModelKind::gaussian_nb;
  throw ParseError("unknown model: " + s);
}

}  // namespace speechml
