#include <algorithm>
#include <limits>

#include "motifvar/cluster.hpp"
#include "motifvar/error.hpp"

namespace motifvar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Nearest {
  std::vector<double> first;   // distance to nearest medoid
  std::vector<double> second;  // distance to second nearest
  std::vector<std::size_t> slot;  // index into medoids of the nearest
};

Nearest nearest_medoids(const DissimilarityMatrix& d, const std::vector<std::size_t>& medoids) {
  const std::size_t n = d.size();
  Nearest out{std::vector<double>(n, kInf), std::vector<double>(n, kInf), std::vector<std::size_t>(n, 0)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < medoids.size(); ++m) {
      const double v = d(j, medoids[m]);
      if (v < out.first[j]) {
        out.second[j] = out.first[j];
        out.first[j] = v;
        out.slot[j] = m;
      } else if (v < out.second[j]) {
        out.second[j] = v;
      }
    }
  }
  return out;
}

}  // namespace

double medoid_cost(const DissimilarityMatrix& dissim, const std::vector<std::size_t>& medoids) {
  double total = 0.0;
  for (std::size_t j = 0; j < dissim.size(); ++j) {
    double best = kInf;
    for (std::size_t m : medoids) best = std::min(best, dissim(j, m));
    total += best;
  }
  return total;
}

Partition pam(const DissimilarityMatrix& dissim, int k, std::uint64_t seed) {
  const std::size_t n = dissim.size();
  if (k < 1) throw config_error("PAM: k must be positive");
  if (n < static_cast<std::size_t>(k)) throw config_error("PAM: fewer objects than clusters");
  const auto kk = static_cast<std::size_t>(k);

  // BUILD
  std::vector<std::size_t> medoids;
  std::vector<char> is_medoid(n, 0);
  std::vector<double> current(n, kInf);
  {
    std::size_t first = 0;
    double best = kInf;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += dissim(i, j);
      if (s < best) {
        best = s;
        first = i;
      }
    }
    medoids.push_back(first);
    is_medoid[first] = 1;
    for (std::size_t j = 0; j < n; ++j) current[j] = dissim(j, first);
  }
  while (medoids.size() < kk) {
    std::size_t pick = n;
    double best_gain = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_medoid[i]) continue;
      double gain = 0.0;
      for (std::size_t j = 0; j < n; ++j) gain += std::max(0.0, current[j] - dissim(i, j));
      if (gain > best_gain) {
        best_gain = gain;
        pick = i;
      }
    }
    medoids.push_back(pick);
    is_medoid[pick] = 1;
    for (std::size_t j = 0; j < n; ++j) current[j] = std::min(current[j], dissim(j, pick));
  }

  Partition p;
  p.algorithm = "rfpam";
  p.k = k;
  p.seed = seed;
  p.ids = dissim.ids();
  p.parameters = {{"method", "pam build+swap"}};
  double cost = medoid_cost(dissim, medoids);
  p.trace.push_back(cost);

  // SWAP: apply the best improving (medoid, non-medoid) exchange until none is left.
  while (true) {
    const Nearest near = nearest_medoids(dissim, medoids);
    double best_delta = 0.0;
    std::size_t best_slot = kk, best_candidate = n;
    for (std::size_t slot = 0; slot < kk; ++slot) {
      for (std::size_t o = 0; o < n; ++o) {
        if (is_medoid[o]) continue;
        double delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double to_o = dissim(j, o);
          const double keep = near.slot[j] == slot ? near.second[j] : near.first[j];
          delta += std::min(to_o, keep) - near.first[j];
        }
        if (delta < best_delta - 1e-12) {
          best_delta = delta;
          best_slot = slot;
          best_candidate = o;
        }
      }
    }
    if (best_slot == kk) break;
    is_medoid[medoids[best_slot]] = 0;
    medoids[best_slot] = best_candidate;
    is_medoid[best_candidate] = 1;
    cost = medoid_cost(dissim, medoids);
    p.trace.push_back(cost);
  }

  std::sort(medoids.begin(), medoids.end());
  p.labels.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t best = 0;
    for (std::size_t m = 1; m < kk; ++m)
      if (dissim(j, medoids[m]) < dissim(j, medoids[best])) best = m;
    // A medoid always belongs to its own cluster, even when tied.
    if (is_medoid[j]) best = static_cast<std::size_t>(std::find(medoids.begin(), medoids.end(), j) - medoids.begin());
    p.labels[j] = static_cast<int>(best) + 1;
  }
  p.medoids = std::move(medoids);
  return p;
}

}  // namespace motifvar
