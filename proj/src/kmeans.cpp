#include <cmath>
#include <limits>

#include "motifvar/cluster.hpp"
#include "motifvar/error.hpp"
#include "motifvar/rng.hpp"

namespace motifvar {

namespace {

std::vector<std::vector<double>> initial_centers(const FeatureMatrix& m, int k, Rng& rng, KMeansInit init) {
  const std::size_t n = m.rows();
  std::vector<std::vector<double>> centers;
  if (init == KMeansInit::random) {
    for (std::size_t i : rng.sample_distinct(n, static_cast<std::size_t>(k)))
      centers.emplace_back(m.row(i).begin(), m.row(i).end());
    return centers;
  }
  // k-means++: first uniformly, then proportional to squared distance.
  std::vector<char> used(n, 0);
  std::size_t first = rng.below(n);
  used[first] = 1;
  centers.emplace_back(m.row(first).begin(), m.row(first).end());
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  while (centers.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      best[i] = std::min(best[i], squared_euclidean(m.row(i), centers.back()));
      if (!used[i]) total += best[i];
    }
    std::size_t pick = n;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        pick = i;
        target -= best[i];
        if (target < 0.0) break;
      }
    } else {
      std::size_t remaining = 0;
      for (std::size_t i = 0; i < n; ++i) remaining += used[i] ? 0 : 1;
      std::size_t skip = rng.below(remaining);
      for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        if (skip-- == 0) {
          pick = i;
          break;
        }
      }
    }
    used[pick] = 1;
    centers.emplace_back(m.row(pick).begin(), m.row(pick).end());
  }
  return centers;
}

std::size_t nearest(std::span<const double> x, const std::vector<std::vector<double>>& centers) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double d = squared_euclidean(x, centers[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace

namespace {

double wcss_zero_based(const FeatureMatrix& matrix, const std::vector<int>& labels,
                       const std::vector<std::vector<double>>& centers) {
  double s = 0.0;
  for (std::size_t i = 0; i < matrix.rows(); ++i)
    s += squared_euclidean(matrix.row(i), centers[static_cast<std::size_t>(labels[i])]);
  return s;
}

}  // namespace

double within_cluster_ss(const FeatureMatrix& matrix, const std::vector<int>& labels,
                         const std::vector<std::vector<double>>& centers) {
  std::vector<int> zero_based(labels);
  for (auto& l : zero_based) --l;
  return wcss_zero_based(matrix, zero_based, centers);
}

Partition kmeans(const FeatureMatrix& matrix, int k, std::uint64_t seed, const KMeansOptions& options) {
  if (k < 1) throw config_error("k-means: k must be positive");
  if (matrix.rows() < static_cast<std::size_t>(k))
    throw config_error("k-means: fewer rows (" + std::to_string(matrix.rows()) + ") than clusters");
  const std::size_t n = matrix.rows();
  const std::size_t h = matrix.width();
  const auto kk = static_cast<std::size_t>(k);

  Rng rng(seed);
  auto centers = initial_centers(matrix, k, rng, options.init);
  std::vector<int> labels(n, -1);
  Partition p;
  p.algorithm = "kmeans";
  p.k = k;
  p.seed = seed;
  p.ids = matrix.ids();
  p.parameters = {{"init", options.init == KMeansInit::random ? "random" : "kmeanspp"},
                  {"max_iterations", std::to_string(options.max_iterations)}};

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const int c = static_cast<int>(nearest(matrix.row(i), centers));
      if (c != labels[i]) {
        labels[i] = c;
        changed = true;
      }
    }
    if (!changed) break;

    std::vector<std::size_t> counts(kk, 0);
    for (int l : labels) ++counts[static_cast<std::size_t>(l)];
    for (std::size_t c = 0; c < kk; ++c) {
      if (counts[c] != 0) continue;
      std::size_t far = n;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto own = static_cast<std::size_t>(labels[i]);
        if (counts[own] < 2) continue;
        const double d = squared_euclidean(matrix.row(i), centers[own]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far == n) throw Error("internal", "k-means: cannot repair empty cluster");
      --counts[static_cast<std::size_t>(labels[far])];
      labels[far] = static_cast<int>(c);
      counts[c] = 1;
    }

    for (auto& center : centers) std::fill(center.begin(), center.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto& center = centers[static_cast<std::size_t>(labels[i])];
      const auto row = matrix.row(i);
      for (std::size_t a = 0; a < h; ++a) center[a] += row[a];
    }
    for (std::size_t c = 0; c < kk; ++c)
      for (auto& v : centers[c]) v /= static_cast<double>(counts[c]);
    p.trace.push_back(wcss_zero_based(matrix, labels, centers));
  }

  p.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.labels[i] = labels[i] + 1;
  p.centers = std::move(centers);
  return p;
}

}  // namespace motifvar
