#include <cmath>
#include <limits>
#include <numeric>

#include "motifvar/cluster.hpp"
#include "motifvar/error.hpp"
#include "motifvar/rng.hpp"

namespace motifvar {

std::vector<HexUnit> hex_lattice(int columns, int rows) {
  std::vector<HexUnit> units;
  units.reserve(static_cast<std::size_t>(columns * rows));
  const double row_height = std::sqrt(3.0) / 2.0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < columns; ++c) units.push_back({c + 0.5 * (r % 2), r * row_height});
  return units;
}

std::pair<int, int> som_shape(int k) {
  int rows = 1;
  for (int d = 1; d * d <= k; ++d)
    if (k % d == 0) rows = d;
  return {k / rows, rows};
}

namespace {

std::size_t best_matching_unit(std::span<const double> x, const std::vector<std::vector<double>>& codes,
                               double* dist2 = nullptr) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < codes.size(); ++u) {
    const double d = squared_euclidean(x, codes[u]);
    if (d < best_d) {
      best_d = d;
      best = u;
    }
  }
  if (dist2) *dist2 = best_d;
  return best;
}

}  // namespace

Partition som(const FeatureMatrix& matrix, int k, std::uint64_t seed, const SomOptions& options) {
  if (k < 1) throw config_error("SOM: k must be positive");
  auto [columns, rows] = som_shape(k);
  if (options.columns > 0 && options.rows > 0) {
    columns = options.columns;
    rows = options.rows;
  }
  if (columns * rows != k) throw config_error("SOM: lattice size must equal k");
  if (matrix.rows() < static_cast<std::size_t>(k)) throw config_error("SOM: fewer rows than map units");
  if (options.epochs < 1) throw config_error("SOM: epochs must be positive");

  const std::size_t n = matrix.rows();
  const auto units = hex_lattice(columns, rows);
  const std::size_t kk = units.size();
  std::vector<double> lattice_dist(kk * kk);
  double diameter = 0.0;
  for (std::size_t a = 0; a < kk; ++a) {
    for (std::size_t b = 0; b < kk; ++b) {
      const double dx = units[a].x - units[b].x, dy = units[a].y - units[b].y;
      lattice_dist[a * kk + b] = std::sqrt(dx * dx + dy * dy);
      diameter = std::max(diameter, lattice_dist[a * kk + b]);
    }
  }
  const double radius_start = std::max(options.radius_end, diameter / 2.0);

  Rng rng(seed);
  std::vector<std::vector<double>> codes;
  for (std::size_t i : rng.sample_distinct(n, kk)) codes.emplace_back(matrix.row(i).begin(), matrix.row(i).end());

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const double total_steps = static_cast<double>(options.epochs) * static_cast<double>(n);
  double step = 0.0;

  Partition p;
  p.algorithm = "som";
  p.k = k;
  p.seed = seed;
  p.ids = matrix.ids();
  p.parameters = {{"lattice", std::to_string(columns) + "x" + std::to_string(rows) + " hexagonal"},
                  {"epochs", std::to_string(options.epochs)},
                  {"alpha", std::to_string(options.alpha_start) + "->" + std::to_string(options.alpha_end)},
                  {"radius", std::to_string(radius_start) + "->" + std::to_string(options.radius_end)}};

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t i : order) {
      const double f = step / total_steps;
      const double alpha = options.alpha_start + (options.alpha_end - options.alpha_start) * f;
      const double radius = radius_start + (options.radius_end - radius_start) * f;
      step += 1.0;
      const auto x = matrix.row(i);
      const std::size_t bmu = best_matching_unit(x, codes);
      for (std::size_t u = 0; u < kk; ++u) {
        if (u != bmu && !(lattice_dist[bmu * kk + u] < radius)) continue;
        auto& w = codes[u];
        for (std::size_t a = 0; a < w.size(); ++a) w[a] += alpha * (x[a] - w[a]);
      }
    }
    double qe = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d2 = 0.0;
      best_matching_unit(matrix.row(i), codes, &d2);
      qe += std::sqrt(d2);
    }
    p.trace.push_back(qe / static_cast<double>(n));
  }

  p.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.labels[i] = static_cast<int>(best_matching_unit(matrix.row(i), codes)) + 1;
  p.centers = std::move(codes);
  return p;
}

}  // namespace motifvar
