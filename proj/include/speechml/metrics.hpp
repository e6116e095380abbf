#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "speechml/dataset.hpp"

namespace speechml {

struct ConfusionCounts {
  long tp = 0, fp = 0, fn = 0, tn = 0;
  long total() const { return tp + fp + fn + tn; }
};

struct ClassificationMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct RegressionMetrics {
  double mae = 0.0;
  double mse = 0.0;
  double r2 = 0.0;
  bool constant_actual = false;  // R2 undefined, reported as 0
};

/// Zero denominators yield 0 (no positives predicted / present).
ClassificationMetrics classification_metrics(const ConfusionCounts& c);

RegressionMetrics regression_metrics(std::span<const double> predicted,
                                     std::span<const double> actual);

/// Symmetric Pearson correlation matrix with unit diagonal. Constant features
/// are flagged and correlate 0 off-diagonal.
struct CorrelationMatrix {
  std::vector<std::string> names;
  std::vector<double> values;  // d x d row-major
  std::vector<char> constant_feature;

  std::size_t dim() const { return names.size(); }
  double at(std::size_t i, std::size_t j) const {
    return values[i * dim() + j];
  }
};

CorrelationMatrix pearson_matrix(const DataMatrix& features,
                                 std::vector<std::string> names = {});

}  // namespace speechml
