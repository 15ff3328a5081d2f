#include <cmath>

#include "motifvar/cluster.hpp"
#include "motifvar/error.hpp"
#include "motifvar/rng.hpp"

namespace motifvar {

std::vector<std::vector<double>> fuzzy_memberships(const FeatureMatrix& matrix,
                                                   const std::vector<std::vector<double>>& centers,
                                                   double fuzzifier) {
  if (!(fuzzifier > 1.0)) throw config_error("fuzzy c-means: fuzzifier must exceed 1");
  const std::size_t kk = centers.size();
  const double power = 2.0 / (fuzzifier - 1.0);
  std::vector<std::vector<double>> u(matrix.rows(), std::vector<double>(kk, 0.0));
  std::vector<double> dist(kk);
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    std::size_t zeros = 0;
    for (std::size_t c = 0; c < kk; ++c) {
      dist[c] = std::sqrt(squared_euclidean(matrix.row(i), centers[c]));
      if (dist[c] == 0.0) ++zeros;
    }
    auto& row = u[i];
    if (zeros > 0) {
      for (std::size_t c = 0; c < kk; ++c) row[c] = dist[c] == 0.0 ? 1.0 / static_cast<double>(zeros) : 0.0;
      continue;
    }
    double total = 0.0;
    for (std::size_t c = 0; c < kk; ++c) {
      double s = 0.0;
      for (std::size_t j = 0; j < kk; ++j) s += std::pow(dist[c] / dist[j], power);
      row[c] = 1.0 / s;
      total += row[c];
    }
    for (auto& v : row) v /= total;
  }
  return u;
}

Partition fuzzy_cmeans(const FeatureMatrix& matrix, int k, std::uint64_t seed, const FuzzyOptions& options) {
  if (k < 1) throw config_error("fuzzy c-means: k must be positive");
  if (matrix.rows() < static_cast<std::size_t>(k)) throw config_error("fuzzy c-means: fewer rows than clusters");
  if (!(options.fuzzifier > 1.0)) throw config_error("fuzzy c-means: fuzzifier must exceed 1");
  const std::size_t n = matrix.rows();
  const std::size_t h = matrix.width();
  const auto kk = static_cast<std::size_t>(k);

  Rng rng(seed);
  std::vector<std::vector<double>> u(n, std::vector<double>(kk));
  for (auto& row : u) {
    double total = 0.0;
    for (auto& v : row) {
      v = rng.uniform() + 1e-12;
      total += v;
    }
    for (auto& v : row) v /= total;
  }

  Partition p;
  p.algorithm = "fuzzy";
  p.k = k;
  p.seed = seed;
  p.ids = matrix.ids();
  p.parameters = {{"fuzzifier", std::to_string(options.fuzzifier)},
                  {"tolerance", std::to_string(options.tolerance)},
                  {"max_iterations", std::to_string(options.max_iterations)}};

  std::vector<std::vector<double>> centers(kk, std::vector<double>(h, 0.0));
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    for (std::size_t c = 0; c < kk; ++c) {
      std::vector<double> acc(h, 0.0);
      double weight = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double w = std::pow(u[i][c], options.fuzzifier);
        const auto row = matrix.row(i);
        for (std::size_t a = 0; a < h; ++a) acc[a] += w * row[a];
        weight += w;
      }
      if (weight > 0.0) {
        for (std::size_t a = 0; a < h; ++a) centers[c][a] = acc[a] / weight;
      }
    }
    auto next = fuzzy_memberships(matrix, centers, options.fuzzifier);
    double change = 0.0;
    double worst_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t c = 0; c < kk; ++c) {
        change = std::max(change, std::abs(next[i][c] - u[i][c]));
        s += next[i][c];
      }
      worst_sum = std::max(worst_sum, std::abs(s - 1.0));
    }
    u = std::move(next);
    p.trace.push_back(worst_sum);
    if (change < options.tolerance) break;
  }

  p.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < kk; ++c)
      if (u[i][c] > u[i][best]) best = c;
    p.labels[i] = static_cast<int>(best) + 1;
  }
  p.centers = std::move(centers);
  p.memberships = std::move(u);
  return p;
}

}  // namespace motifvar
