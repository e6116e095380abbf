#pragma once

#include <span>
#include <string>
#include <vector>

#include "speechml/dataset.hpp"

namespace speechml {

/// Gaussian naive Bayes over two classes with variance flooring.
struct GaussianNbModel {
  std::vector<std::string> feature_schema;
  double prior[2] = {0.0, 0.0};
  std::vector<double> mean[2];      // per class, per feature
  std::vector<double> variance[2];  // floored
  double variance_floor = 0.0;

  std::size_t n_features() const { return feature_schema.size(); }
};

GaussianNbModel fit_gaussian_nb(const DataMatrix& data,
                                std::span<const int> labels,
                                std::vector<std::string> feature_schema = {});

/// Posterior probability of class 1 under independent Gaussians (log space).
double gaussian_nb_predict(const GaussianNbModel& model,
                           std::span<const double> row);

}  // namespace speechml
