#include "speechml/cart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "speechml/errors.hpp"

namespace speechml {

namespace {

struct BestSplit {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;  // weighted SSE decrease
};

struct Builder {
  const DataMatrix& data;
  std::span<const double> targets;
  std::span<const double> weights;
  const CartParams& params;
  std::vector<TreeNode> nodes;

  std::vector<int> split_candidates() {
    const int d = static_cast<int>(data.cols);
    std::vector<int> feats(static_cast<std::size_t>(d));
    std::iota(feats.begin(), feats.end(), 0);
    if (params.mtry > 0 && params.mtry < d && params.rng != nullptr) {
      for (int i = 0; i < params.mtry; ++i) {
        const auto j = i + static_cast<int>(next_index(
                               *params.rng,
                               static_cast<std::size_t>(d - i)));
        std::swap(feats[static_cast<std::size_t>(i)],
                  feats[static_cast<std::size_t>(j)]);
      }
      feats.resize(static_cast<std::size_t>(params.mtry));
      std::sort(feats.begin(), feats.end());
    }
    return feats;
  }

  int build(const std::vector<std::size_t>& rows, int depth) {
    double w_total = 0.0, wy = 0.0;
    for (std::size_t r : rows) {
      w_total += weights[r];
      wy += weights[r] * targets[r];
    }
    const double mean = w_total > 0.0 ? wy / w_total : 0.0;
    double sse = 0.0;
    for (std::size_t r : rows) {
      const double d = targets[r] - mean;
      sse += weights[r] * d * d;
    }

    const int index = static_cast<int>(nodes.size());
    nodes.push_back(TreeNode{});
    nodes.back().value = mean;
    nodes.back().n_samples = rows.size();
    nodes.back().weight = w_total;

    const bool depth_ok = params.max_depth < 0 || depth < params.max_depth;
    if (!depth_ok || sse <= 0.0 ||
        rows.size() < static_cast<std::size_t>(params.min_samples_split) ||
        rows.size() < 2 * static_cast<std::size_t>(params.min_samples_leaf)) {
      return index;
    }

    const BestSplit best = find_best_split(rows, mean, sse);
    if (!best.found) {
      return index;
    }

    std::vector<std::size_t> left_rows, right_rows;
    left_rows.reserve(rows.size());
    right_rows.reserve(rows.size());
    for (std::size_t r : rows) {
      if (data.at(r, static_cast<std::size_t>(best.feature)) <=
          best.threshold) {
        left_rows.push_back(r);
      } else {
        right_rows.push_back(r);
      }
    }

    nodes[static_cast<std::size_t>(index)].feature = best.feature;
    nodes[static_cast<std::size_t>(index)].threshold = best.threshold;
    nodes[static_cast<std::size_t>(index)].impurity_decrease =
        w_total > 0.0 ? best.gain / w_total : 0.0;

    const int left = build(left_rows, depth + 1);
    const int right = build(right_rows, depth + 1);
    nodes[static_cast<std::size_t>(index)].left = left;
    nodes[static_cast<std::size_t>(index)].right = right;
    return index;
  }

  // Weighted SSE of the partition x[f] <= t vs x[f] > t, accumulated in row
  // order. Different features inducing the same partition therefore produce
  // bitwise-equal totals, so the (feature, threshold) tie rule is exact.
  double partition_sse(const std::vector<std::size_t>& rows, int f,
                       double threshold, std::size_t min_leaf) const {
    double wl = 0.0, wr = 0.0, ml = 0.0, mr = 0.0;
    std::size_t nl = 0, nr = 0;
    for (std::size_t r : rows) {
      if (data.at(r, static_cast<std::size_t>(f)) <= threshold) {
        wl += weights[r];
        ml += weights[r] * targets[r];
        ++nl;
      } else {
        wr += weights[r];
        mr += weights[r] * targets[r];
        ++nr;
      }
    }
    if (nl < min_leaf || nr < min_leaf || wl <= 0.0 || wr <= 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    ml /= wl;
    mr /= wr;
    double sse = 0.0;
    for (std::size_t r : rows) {
      const double m =
          data.at(r, static_cast<std::size_t>(f)) <= threshold ? ml : mr;
      const double d = targets[r] - m;
      sse += weights[r] * d * d;
    }
    return sse;
  }

  BestSplit find_best_split(const std::vector<std::size_t>& rows, double mean,
                            double parent_sse) {
    (void)mean;
    BestSplit best;
    double best_total = std::numeric_limits<double>::infinity();
    const auto min_leaf = static_cast<std::size_t>(params.min_samples_leaf);

    std::vector<double> values;
    for (const int f : split_candidates()) {
      values.clear();
      for (std::size_t r : rows) {
        values.push_back(data.at(r, static_cast<std::size_t>(f)));
      }
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());

      for (std::size_t v = 0; v + 1 < values.size(); ++v) {
        const double threshold = (values[v] + values[v + 1]) / 2.0;
        const double total = partition_sse(rows, f, threshold, min_leaf);
        if (total < best_total) {
          best_total = total;
          best.feature = f;
          best.threshold = threshold;
        }
      }
    }
    best.gain = parent_sse - best_total;
    best.found = std::isfinite(best_total) && best.gain > 0.0;
    return best;
  }
};

}  // namespace

double CartTree::predict(std::span<const double> row) const {
  int i = 0;
  while (!is_leaf(i)) {
    const TreeNode& node = nodes[static_cast<std::size_t>(i)];
    i = row[static_cast<std::size_t>(node.feature)] <= node.threshold
            ? node.left
            : node.right;
  }
  return nodes[static_cast<std::size_t>(i)].value;
}

int CartTree::leaf_index(std::span<const double> row) const {
  int i = 0;
  while (!is_leaf(i)) {
    const TreeNode& node = nodes[static_cast<std::size_t>(i)];
    i = row[static_cast<std::size_t>(node.feature)] <= node.threshold
            ? node.left
            : node.right;
  }
  return i;
}

std::size_t CartTree::internal_node_count() const {
  std::size_t count = 0;
  for (const TreeNode& n : nodes) {
    count += n.feature >= 0;
  }
  return count;
}

CartTree build_cart(const DataMatrix& data, std::span<const double> targets,
                    std::span<const double> sample_weights,
                    const CartParams& params) {
  std::vector<std::size_t> rows(data.rows);
  std::iota(rows.begin(), rows.end(), 0);
  return build_cart_on_rows(data, targets, sample_weights, rows, params);
}

CartTree build_cart_on_rows(const DataMatrix& data,
                            std::span<const double> targets,
                            std::span<const double> sample_weights,
                            std::span<const std::size_t> rows,
                            const CartParams& params) {
  if (targets.size() != data.rows || sample_weights.size() != data.rows) {
    throw DimensionMismatch(
        "build_cart: rows, targets and weights lengths differ");
  }
  if (rows.empty() || data.rows == 0) {
    throw EmptyInput("build_cart: no training samples");
  }
  if (params.min_samples_leaf < 1 || params.min_samples_split < 2) {
    throw InvalidArgument("build_cart: bad min_samples constraints");
  }

  Builder builder{data, targets, sample_weights, params, {}};
  builder.build(std::vector<std::size_t>(rows.begin(), rows.end()), 0);
  CartTree tree;
  tree.nodes = std::move(builder.nodes);
  return tree;
}

}  // namespace speechml
