#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "speechml/errors.hpp"

namespace speechml {

/// Row-major dense matrix of feature values.
struct DataMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  DataMatrix() = default;
  DataMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), values(r * c, 0.0) {}

  double at(std::size_t r, std::size_t c) const {
    return values[r * cols + c];
  }
  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
  std::span<const double> row(std::size_t r) const {
    return {values.data() + r * cols, cols};
  }

  static DataMatrix from_rows(
      const std::vector<std::vector<double>>& data) {
    DataMatrix m;
    m.rows = data.size();
    m.cols = data.empty() ? 0 : data.front().size();
    m.values.reserve(m.rows * m.cols);
    for (const auto& r : data) {
      if (r.size() != m.cols) {
        throw DimensionMismatch("from_rows: ragged rows");
      }
      m.values.insert(m.values.end(), r.begin(), r.end());
    }
    return m;
  }
};

/// Feature vectors paired with a binary label and a continuous score target.
struct LabeledDataset {
  std::vector<std::string> ids;
  DataMatrix x;
  std::vector<std::string> feature_names;
  std::vector<int> labels;      // 0/1
  std::vector<double> scores;   // in [0, 1]

  std::size_t size() const { return x.rows; }
};

}  // namespace speechml
