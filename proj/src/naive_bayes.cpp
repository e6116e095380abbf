#include "speechml/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "speechml/errors.hpp"

namespace speechml {

GaussianNbModel fit_gaussian_nb(const DataMatrix& data,
                                std::span<const int> labels,
                                std::vector<std::string> feature_schema) {
  if (labels.size() != data.rows) {
    throw DimensionMismatch("fit_gaussian_nb: labels do not match rows");
  }
  const std::size_t n = data.rows;
  const std::size_t d = data.cols;

  std::size_t count[2] = {0, 0};
  for (int y : labels) {
    if (y != 0 && y != 1) {
      throw InvalidArgument("fit_gaussian_nb: labels must be 0 or 1");
    }
    ++count[y];
  }
  if (count[0] == 0 || count[1] == 0) {
    throw SingleClass("fit_gaussian_nb: both classes must be present");
  }

  GaussianNbModel model;
  if (feature_schema.empty()) {
    for (std::size_t j = 0; j < d; ++j) {
      model.feature_schema.push_back("x" + std::to_string(j));
    }
  } else {
    if (feature_schema.size() != d) {
      throw DimensionMismatch("fit_gaussian_nb: schema does not match data");
    }
    model.feature_schema = std::move(feature_schema);
  }
  model.prior[0] = static_cast<double>(count[0]) / static_cast<double>(n);
  model.prior[1] = static_cast<double>(count[1]) / static_cast<double>(n);

  for (int c = 0; c < 2; ++c) {
    model.mean[c].assign(d, 0.0);
    model.variance[c].assign(d, 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int c = labels[i];
    for (std::size_t j = 0; j < d; ++j) {
      model.mean[c][j] += data.at(i, j);
    }
  }
  for (int c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < d; ++j) {
      model.mean[c][j] /= static_cast<double>(count[c]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int c = labels[i];
    for (std::size_t j = 0; j < d; ++j) {
      const double dlt = data.at(i, j) - model.mean[c][j];
      model.variance[c][j] += dlt * dlt;
    }
  }
  for (int c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < d; ++j) {
      model.variance[c][j] /= static_cast<double>(count[c]);
    }
  }

  // Floor relative to the widest overall feature variance, so constant
  // features stay numerically harmless.
  double max_overall_var = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double mean_all = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mean_all += data.at(i, j);
    }
    mean_all /= static_cast<double>(n);
    double var_all = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dlt = data.at(i, j) - mean_all;
      var_all += dlt * dlt;
    }
    max_overall_var = std::max(max_overall_var,
                               var_all / static_cast<double>(n));
  }
  model.variance_floor =
      max_overall_var > 0.0 ? 1e-9 * max_overall_var : 1e-9;
  for (int c = 0; c < 2; ++c) {
    for (double& v : model.variance[c]) {
      v = std::max(v, model.variance_floor);
    }
  }
  return model;
}

double gaussian_nb_predict(const GaussianNbModel& model,
                           std::span<const double> row) {
  if (row.size() != model.n_features()) {
    throw DimensionMismatch("gaussian_nb_predict: row arity mismatch");
  }
  double ll[2];
  for (int c = 0; c < 2; ++c) {
    double acc = std::log(model.prior[c]);
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double var = model.variance[c][j];
      const double dlt = row[j] - model.mean[c][j];
      acc += -0.5 * std::log(2.0 * std::numbers::pi * var) -
             dlt * dlt / (2.0 * var);
    }
    ll[c] = acc;
  }
  const double m = std::max(ll[0], ll[1]);
  const double e0 = std::exp(ll[0] - m);
  const double e1 = std::exp(ll[1] - m);
  return e1 / (e0 + e1);
}

}  // namespace speechml
