#include <algorithm>
#include <cmath>
#include <numeric>

#include "motifvar/cluster.hpp"
#include "motifvar/error.hpp"
#include "motifvar/parallel.hpp"
#include "motifvar/rng.hpp"

namespace motifvar {

namespace {

struct Node {
  int feature = -1;  // -1: leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
};

// Two-class CART grown to purity on one bootstrap sample.
class Tree {
 public:
  Tree(const std::vector<double>& x, std::size_t width, const std::vector<int>& y, std::vector<std::size_t> sample,
       std::size_t mtry, std::size_t min_leaf, Rng& rng)
      : x_(x), width_(width), y_(y) {
    nodes_.push_back({});
    struct Work {
      int node;
      std::vector<std::size_t> rows;
    };
    std::vector<Work> stack;
    stack.push_back({0, std::move(sample)});
    std::vector<std::size_t> features(width);
    std::iota(features.begin(), features.end(), 0);
    while (!stack.empty()) {
      Work w = std::move(stack.back());
      stack.pop_back();
      const auto split = best_split(w.rows, features, mtry, min_leaf, rng);
      if (split.feature < 0) continue;
      std::vector<std::size_t> left, right;
      for (std::size_t r : w.rows) (value(r, static_cast<std::size_t>(split.feature)) <= split.threshold ? left : right).push_back(r);
      const int l = static_cast<int>(nodes_.size());
      nodes_.push_back({});
      nodes_.push_back({});
      nodes_[static_cast<std::size_t>(w.node)] = {split.feature, split.threshold, l, l + 1};
      stack.push_back({l + 1, std::move(right)});
      stack.push_back({l, std::move(left)});
    }
  }

  int leaf_of(std::span<const double> row) const {
    int n = 0;
    while (nodes_[static_cast<std::size_t>(n)].feature >= 0) {
      const Node& node = nodes_[static_cast<std::size_t>(n)];
      n = row[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
    }
    return n;
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
  };

  double value(std::size_t r, std::size_t f) const { return x_[r * width_ + f]; }

  Split best_split(const std::vector<std::size_t>& rows, std::vector<std::size_t>& features, std::size_t mtry,
                   std::size_t min_leaf, Rng& rng) const {
    const double n = static_cast<double>(rows.size());
    double ones = 0.0;
    for (std::size_t r : rows) ones += y_[r];
    if (ones == 0.0 || ones == n || rows.size() <= min_leaf) return {};

    // Partial Fisher-Yates: the first mtry entries become the candidate set.
    for (std::size_t i = 0; i < mtry; ++i) std::swap(features[i], features[i + rng.below(width_ - i)]);

    // Maximizing sum over children of (c0^2 + c1^2) / size is the Gini criterion.
    const double parent = ((n - ones) * (n - ones) + ones * ones) / n;
    Split best;
    double best_score = parent + 1e-12 * n;
    std::vector<std::size_t> sorted(rows);
    for (std::size_t fi = 0; fi < mtry; ++fi) {
      const std::size_t f = features[fi];
      std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) { return value(a, f) < value(b, f); });
      double left_n = 0.0, left_ones = 0.0;
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        left_n += 1.0;
        left_ones += y_[sorted[i]];
        const double v = value(sorted[i], f), next = value(sorted[i + 1], f);
        if (!(next > v)) continue;
        const double right_n = n - left_n, right_ones = ones - left_ones;
        const double score = ((left_n - left_ones) * (left_n - left_ones) + left_ones * left_ones) / left_n +
                             ((right_n - right_ones) * (right_n - right_ones) + right_ones * right_ones) / right_n;
        if (score > best_score) {
          best_score = score;
          best.feature = static_cast<int>(f);
          best.threshold = v + (next - v) / 2.0;
        }
      }
    }
    return best;
  }

  const std::vector<double>& x_;
  std::size_t width_;
  const std::vector<int>& y_;
  std::vector<Node> nodes_;
};

}  // namespace

DissimilarityMatrix rf_dissimilarity(const FeatureMatrix& matrix, std::uint64_t seed, const ForestOptions& options,
                                     int threads) {
  const std::size_t n = matrix.rows();
  const std::size_t width = matrix.width();
  if (n < 2) throw config_error("random forest: need at least 2 rows");
  if (width == 0) throw config_error("random forest: no attributes");
  if (options.trees < 1) throw config_error("random forest: trees must be positive");
  const std::size_t mtry = options.mtry > 0
                               ? std::min<std::size_t>(static_cast<std::size_t>(options.mtry), width)
                               : std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(width))));

  // Rows 0..n-1 real, n..2n-1 synthetic.
  std::vector<double> x(2 * n * width);
  std::vector<int> y(2 * n, 0);
  std::copy(matrix.data().begin(), matrix.data().end(), x.begin());
  Rng rng(mix_seed(seed, 0));
  std::vector<std::size_t> perm(n);
  for (std::size_t f = 0; f < width; ++f) {
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    for (std::size_t i = 0; i < n; ++i) x[(n + i) * width + f] = matrix(perm[i], f);
  }
  for (std::size_t i = n; i < 2 * n; ++i) y[i] = 1;

  const auto trees = static_cast<std::size_t>(options.trees);
  std::vector<std::vector<int>> leaves(trees);
  parallel_for(trees, threads, [&](std::size_t t) {
    Rng tree_rng(mix_seed(seed, t + 1));
    std::vector<std::size_t> sample(2 * n);
    for (auto& s : sample) s = tree_rng.below(2 * n);
    const Tree tree(x, width, y, std::move(sample), mtry, static_cast<std::size_t>(std::max(1, options.min_leaf)),
                    tree_rng);
    auto& out = leaves[t];
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = tree.leaf_of(matrix.row(i));
  });

  std::vector<std::uint32_t> together(n * n, 0);
  for (const auto& leaf : leaves)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (leaf[i] == leaf[j]) ++together[i * n + j];

  DissimilarityMatrix d(matrix.ids());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double proximity = static_cast<double>(together[i * n + j]) / static_cast<double>(trees);
      d.set(i, j, std::sqrt(std::max(0.0, 1.0 - proximity)));
    }
  }
  return d;
}

}  // namespace motifvar
