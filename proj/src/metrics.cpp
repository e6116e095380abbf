#include "speechml/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "speechml/errors.hpp"

namespace speechml {

ClassificationMetrics classification_metrics(const ConfusionCounts& c) {
  const long total = c.total();
  if (total <= 0) {
    throw EmptyConfusion("classification_metrics: empty confusion matrix");
  }
  ClassificationMetrics m;
  m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(total);
  m.precision = c.tp + c.fp > 0
                    ? static_cast<double>(c.tp) /
                          static_cast<double>(c.tp + c.fp)
                    : 0.0;
  m.recall = c.tp + c.fn > 0 ? static_cast<double>(c.tp) /
                                   static_cast<double>(c.tp + c.fn)
                             : 0.0;
  m.f1 = m.precision + m.recall > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

RegressionMetrics regression_metrics(std::span<const double> predicted,
                                     std::span<const double> actual) {
  if (predicted.size() != actual.size()) {
    throw LengthMismatch("regression_metrics: length mismatch");
  }
  if (predicted.empty()) {
    throw EmptyInput("regression_metrics: empty input");
  }
  const auto n = static_cast<double>(predicted.size());

  RegressionMetrics m;
  double sse = 0.0, sae = 0.0, mean_actual = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double d = predicted[i] - actual[i];
    sae += std::abs(d);
    sse += d * d;
    mean_actual += actual[i];
  }
  mean_actual /= n;
  m.mae = sae / n;
  m.mse = sse / n;

  double ss_total = 0.0;
  for (double a : actual) {
    const double d = a - mean_actual;
    ss_total += d * d;
  }
  if (ss_total > 0.0) {
    m.r2 = 1.0 - sse / ss_total;
  } else {
    m.r2 = 0.0;
    m.constant_actual = true;
  }
  return m;
}

CorrelationMatrix pearson_matrix(const DataMatrix& features,
                                 std::vector<std::string> names) {
  if (features.rows < 2) {
    throw TooFewSamples("pearson_matrix: need at least two rows");
  }
  const std::size_t n = features.rows;
  const std::size_t d = features.cols;

  CorrelationMatrix out;
  if (names.empty()) {
    for (std::size_t j = 0; j < d; ++j) {
      out.names.push_back("x" + std::to_string(j));
    }
  } else {
    if (names.size() != d) {
      throw DimensionMismatch("pearson_matrix: names do not match columns");
    }
    out.names = std::move(names);
  }
  out.values.assign(d * d, 0.0);
  out.constant_feature.assign(d, 0);

  std::vector<double> mean(d, 0.0), sd(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      mean[j] += features.at(i, j);
    }
  }
  for (double& m : mean) {
    m /= static_cast<double>(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double dlt = features.at(i, j) - mean[j];
      sd[j] += dlt * dlt;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    out.constant_feature[j] = sd[j] <= 0.0;
    sd[j] = std::sqrt(sd[j]);
  }

  for (std::size_t a = 0; a < d; ++a) {
    out.values[a * d + a] = 1.0;
    for (std::size_t b = a + 1; b < d; ++b) {
      double r = 0.0;
      if (!out.constant_feature[a] && !out.constant_feature[b]) {
        double cov = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          cov += (features.at(i, a) - mean[a]) * (features.at(i, b) - mean[b]);
        }
        r = std::clamp(cov / (sd[a] * sd[b]), -1.0, 1.0);
      }
      out.values[a * d + b] = r;
      out.values[b * d + a] = r;
    }
  }
  return out;
}

}  // namespace speechml
