#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "speechml/dataset.hpp"
#include "speechml/rng.hpp"

namespace speechml {

struct CartParams {
  int max_depth = -1;  // -1 = unlimited
  int min_samples_split = 2;
  int min_samples_leaf = 1;
  // When > 0, each split considers only a uniformly drawn subset of this many
  // features (random-forest style); requires rng.
  int mtry = 0;
  Rng* rng = nullptr;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;        // weighted mean target of the node
  std::size_t n_samples = 0;
  double weight = 0.0;       // sum of sample weights
  double impurity_decrease = 0.0;  // weighted variance drop at this split
};

/// Binary regression tree with axis-aligned threshold splits (x <= t goes
/// left). Node 0 is the root.
struct CartTree {
  std::vector<TreeNode> nodes;

  bool is_leaf(int i) const { return nodes[static_cast<std::size_t>(i)].feature < 0; }
  double predict(std::span<const double> row) const;
  int leaf_index(std::span<const double> row) const;
  std::size_t internal_node_count() const;
};

/// Greedy CART minimizing weighted squared-error impurity. Candidate
/// thresholds are midpoints between consecutive distinct sorted feature
/// values; ties break toward the lowest feature index, then lowest threshold.
CartTree build_cart(const DataMatrix& data, std::span<const double> targets,
                    std::span<const double> sample_weights,
                    const CartParams& params = {});

/// Same, restricted to a subset of rows (used for bootstrap fitting).
CartTree build_cart_on_rows(const DataMatrix& data,
                            std::span<const double> targets,
                            std::span<const double> sample_weights,
                            std::span<const std::size_t> rows,
                            const CartParams& params);

}  // namespace speechml
