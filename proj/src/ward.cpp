#include <cmath>
#include <limits>

#include "motifvar/cluster.hpp"
#include "motifvar/error.hpp"

namespace motifvar {

namespace {

struct WardRun {
  std::vector<Merge> merges;
  std::vector<std::size_t> root;  // cluster representative per point
};

// Stops once `clusters` clusters remain. Cluster slots are indexed by their
// lowest member, which is also the slot that survives a merge.
WardRun agglomerate(const FeatureMatrix& m, std::size_t clusters) {
  const std::size_t n = m.rows();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = squared_euclidean(m.row(i), m.row(j));

  std::vector<double> size(n, 1.0);
  std::vector<char> active(n, 1);
  WardRun run;
  run.root.resize(n);
  for (std::size_t i = 0; i < n; ++i) run.root[i] = i;

  for (std::size_t remaining = n; remaining > clusters; --remaining) {
    std::size_t bi = n, bj = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (active[j] && d[i * n + j] < best) {
          best = d[i * n + j];
          bi = i;
          bj = j;
        }
      }
    }
    const double ni = size[bi], nj = size[bj];
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      const double nk = size[k];
      const double updated =
          ((ni + nk) * d[bi * n + k] + (nj + nk) * d[bj * n + k] - nk * best) / (ni + nj + nk);
      d[bi * n + k] = d[k * n + bi] = updated;
    }
    size[bi] += nj;
    active[bj] = 0;
    for (auto& r : run.root)
      if (r == bj) r = bi;
    run.merges.push_back({bi, bj, std::sqrt(std::max(best, 0.0))});
  }
  return run;
}

}  // namespace

std::vector<Merge> ward_merges(const FeatureMatrix& matrix) {
  if (matrix.rows() == 0) return {};
  return agglomerate(matrix, 1).merges;
}

Partition hierarchical_ward(const FeatureMatrix& matrix, int k) {
  if (k < 1) throw config_error("Ward: k must be positive");
  if (matrix.rows() < static_cast<std::size_t>(k)) throw config_error("Ward: fewer rows than clusters");
  const auto run = agglomerate(matrix, static_cast<std::size_t>(k));

  Partition p;
  p.algorithm = "hier";
  p.k = k;
  p.ids = matrix.ids();
  p.parameters = {{"linkage", "ward"}, {"distance", "euclidean"}};
  p.labels.assign(matrix.rows(), 0);
  std::vector<int> label_of_root(matrix.rows(), 0);
  int next = 0;
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    auto& l = label_of_root[run.root[i]];
    if (l == 0) l = ++next;
    p.labels[i] = l;
  }
  for (const auto& merge : run.merges) p.trace.push_back(merge.height);

  p.centers.assign(static_cast<std::size_t>(k), std::vector<double>(matrix.width(), 0.0));
  const auto sizes = p.cluster_sizes();
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    auto& c = p.centers[static_cast<std::size_t>(p.labels[i] - 1)];
    for (std::size_t a = 0; a < matrix.width(); ++a) c[a] += matrix(i, a);
  }
  for (std::size_t c = 0; c < p.centers.size(); ++c)
    for (auto& v : p.centers[c]) v /= static_cast<double>(sizes[c]);
  return p;
}

}  // namespace motifvar
