#include <doctest.h>

#include <set>

#include "../support/oracles.hpp"
#include "motifvar/cluster.hpp"
#include "motifvar/error.hpp"
#include "motifvar/rng.hpp"

using namespace motifvar;

namespace {

FeatureMatrix matrix_of(const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> ids, cols;
  for (std::size_t i = 0; i < rows.size(); ++i) ids.push_back("r" + std::to_string(i));
  for (std::size_t h = 0; h < rows.front().size(); ++h) cols.push_back("c" + std::to_string(h));
  return FeatureMatrix(ids, cols, rows);
}

// `groups` blobs of `per` points in `dims` dimensions; centers 10 apart per
// axis step, spread 0.1.
std::vector<std::vector<double>> blobs(int groups, int per, int dims, std::uint64_t seed,
                                       std::vector<int>* truth = nullptr) {
  Rng rng(seed);
  std::vector<std::vector<double>> rows;
  for (int g = 0; g < groups; ++g) {
    std::vector<double> center(static_cast<std::size_t>(dims));
    for (int h = 0; h < dims; ++h) center[static_cast<std::size_t>(h)] = 10.0 * ((g >> h) & 1) + (h == 0 ? 0 : 0);
    if (dims == 1) center[0] = 10.0 * g;
    for (int p = 0; p < per; ++p) {
      auto row = center;
      for (auto& v : row) v += rng.normal(0.0, 0.1);
      rows.push_back(row);
      if (truth) truth->push_back(g);
    }
  }
  return rows;
}

std::vector<std::vector<double>> random_rows(std::size_t n, std::size_t dims, Rng& rng) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(dims));
  for (auto& r : rows)
    for (auto& v : r) v = rng.uniform();
  return rows;
}

void check_labels(const Partition& p, int k) {
  for (int l : p.labels) {
    CHECK(l >= 1);
    CHECK(l <= k);
  }
}

}  // namespace

TEST_CASE("minmax_normalize") {
  const auto m = minmax_normalize(matrix_of({{2, 5, 0}, {4, 5, 1}, {6, 5, 0.5}}));
  CHECK(m(0, 0) == 0.0);
  CHECK(m(1, 0) == 0.5);
  CHECK(m(2, 0) == 1.0);
  CHECK(m(0, 1) == 0.0);
  CHECK(m(1, 1) == 0.0);
  CHECK(m(2, 2) == 0.5);
  CHECK(m(1, 2) == 1.0);
  CHECK(m.normalized);
  CHECK_THROWS_AS(minmax_normalize(matrix_of({{1, 2}})), Error);
}

TEST_CASE("FeatureMatrix rejects ragged rows") {
  CHECK_THROWS_AS(FeatureMatrix({"a", "b"}, {"x", "y"}, {{1, 2}, {3}}), Error);
  CHECK_THROWS_AS(FeatureMatrix({"a"}, {"x"}, {{1}, {2}}), Error);
}

TEST_CASE("kmeans") {
  SUBCASE("k = 1 gives the column means") {
    const auto p = kmeans(matrix_of({{0, 0}, {2, 4}, {4, 2}}), 1, 7);
    CHECK(p.labels == std::vector<int>{1, 1, 1});
    CHECK(p.centers[0][0] == doctest::Approx(2.0));
    CHECK(p.centers[0][1] == doctest::Approx(2.0));
  }
  SUBCASE("two separated blobs match the best WCSS bipartition") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto rows = blobs(2, 7, 2, seed);
      const auto p = kmeans(matrix_of(rows), 2, seed);
      CHECK(oracle::same_grouping(p.labels, oracle::best_bipartition(rows)));
    }
  }
  SUBCASE("deterministic") {
    Rng rng(1);
    const auto m = matrix_of(random_rows(60, 4, rng));
    const auto a = kmeans(m, 8, 42), b = kmeans(m, 8, 42);
    CHECK(a.labels == b.labels);
    CHECK(a.centers == b.centers);
    CHECK(a.trace == b.trace);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(kmeans(matrix_of({{0}, {1}}), 3, 1), Error);
  }
  SUBCASE("duplicate rows still yield k occupied clusters") {
    std::vector<std::vector<double>> rows(10, {1.0, 1.0});
    rows.push_back({5.0, 5.0});
    rows.push_back({9.0, 9.0});
    const auto p = kmeans(matrix_of(rows), 3, 3);
    CHECK(std::set<int>(p.labels.begin(), p.labels.end()).size() == 3);
  }
}

TEST_CASE("kmeans WCSS never increases") {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    const auto rows = random_rows(40 + rng.below(40), 2 + rng.below(6), rng);
    const auto m = matrix_of(rows);
    const auto p = kmeans(m, 8, rng.next_u64());
    REQUIRE_FALSE(p.trace.empty());
    for (std::size_t i = 1; i < p.trace.size(); ++i) CHECK(p.trace[i] <= p.trace[i - 1] + 1e-12);
    CHECK(within_cluster_ss(m, p.labels, p.centers) == doctest::Approx(oracle::wcss(rows, p.labels)));
    check_labels(p, 8);
  }
}

TEST_CASE("fuzzy memberships") {
  const auto m = matrix_of({{1.0, 0.0}, {0.0, 0.0}, {2.0, 0.0}});
  const auto u = fuzzy_memberships(m, {{0.0, 0.0}, {2.0, 0.0}}, 2.0);
  CHECK(u[0][0] == doctest::Approx(0.5));
  CHECK(u[0][1] == doctest::Approx(0.5));
  CHECK(u[1][0] == 1.0);
  CHECK(u[1][1] == 0.0);
  CHECK(u[2][1] == 1.0);

  // Point (1,0) against centers at 0 and 3: distances 1 and 2, m = 2 gives
  // weights 1/1 and 1/4, memberships 0.8 and 0.2.
  const auto v = fuzzy_memberships(matrix_of({{1.0, 0.0}}), {{0.0, 0.0}, {3.0, 0.0}}, 2.0);
  CHECK(v[0][0] == doctest::Approx(0.8));
  CHECK(v[0][1] == doctest::Approx(0.2));

  // Two centers at the same place share the membership.
  const auto w = fuzzy_memberships(matrix_of({{1.0}}), {{1.0}, {1.0}, {4.0}}, 2.0);
  CHECK(w[0] == std::vector<double>{0.5, 0.5, 0.0});
}

TEST_CASE("fuzzy c-means keeps rows stochastic") {
  Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    const auto m = matrix_of(random_rows(30 + rng.below(40), 2 + rng.below(5), rng));
    const auto p = fuzzy_cmeans(m, 8, rng.next_u64());
    for (double e : p.trace) CHECK(e <= 1e-9);
    REQUIRE(p.memberships.size() == m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      double s = 0.0;
      for (double u : p.memberships[i]) s += u;
      CHECK(std::abs(s - 1.0) <= 1e-9);
      const auto best = std::max_element(p.memberships[i].begin(), p.memberships[i].end());
      CHECK(p.labels[i] == 1 + (best - p.memberships[i].begin()));
    }
  }
  CHECK_THROWS_AS(fuzzy_cmeans(matrix_of({{0}, {1}, {2}}), 2, 1, FuzzyOptions{1.0}), Error);
}

TEST_CASE("SOM") {
  CHECK(som_shape(8) == std::pair{4, 2});
  CHECK(som_shape(6) == std::pair{3, 2});
  CHECK(som_shape(7) == std::pair{7, 1});
  const auto lattice = hex_lattice(4, 2);
  REQUIRE(lattice.size() == 8);
  CHECK(lattice[4].x == doctest::Approx(0.5));
  CHECK(lattice[4].y == doctest::Approx(std::sqrt(3.0) / 2.0));

  SUBCASE("identical rows land in one unit") {
    const auto p = som(matrix_of(std::vector<std::vector<double>>(20, {0.3, 0.3})), 8, 1);
    CHECK(std::set<int>(p.labels.begin(), p.labels.end()).size() == 1);
  }
  SUBCASE("eight separated blobs map to eight distinct pure units") {
    std::vector<int> truth;
    const auto rows = blobs(8, 10, 3, 5, &truth);
    const auto p = som(matrix_of(rows), 8, 9);
    std::map<int, std::set<int>> units_of_blob;
    std::map<int, std::set<int>> blobs_of_unit;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      units_of_blob[truth[i]].insert(p.labels[i]);
      blobs_of_unit[p.labels[i]].insert(truth[i]);
    }
    CHECK(blobs_of_unit.size() == 8);
    for (const auto& [unit, members] : blobs_of_unit) CHECK(members.size() == 1);
  }
  SUBCASE("deterministic, errors") {
    Rng rng(3);
    const auto m = matrix_of(random_rows(30, 3, rng));
    CHECK(som(m, 8, 4).labels == som(m, 8, 4).labels);
    CHECK_THROWS_AS(som(matrix_of(random_rows(5, 2, rng)), 8, 1), Error);
  }
}

TEST_CASE("Ward") {
  const auto two = matrix_of({{0.0}, {1.0}});
  CHECK(hierarchical_ward(two, 2).labels == std::vector<int>{1, 2});
  CHECK(hierarchical_ward(two, 1).labels == std::vector<int>{1, 1});

  // Pairs {0,2} and {1,3}; the cut must match the Ward (WCSS) optimum.
  const std::vector<std::vector<double>> rows{{0.0, 0.0}, {5.0, 5.0}, {0.1, 0.0}, {5.0, 5.2}};
  const auto p = hierarchical_ward(matrix_of(rows), 2);
  CHECK(p.labels == std::vector<int>{1, 2, 1, 2});
  CHECK(oracle::same_grouping(p.labels, oracle::best_bipartition(rows)));

  // First merge height is the Euclidean distance between the closest pair.
  const auto merges = ward_merges(matrix_of(rows));
  REQUIRE(merges.size() == 3);
  CHECK(merges[0].height == doctest::Approx(0.1));
  // Ward increase for two singletons merged at distance d is d^2/2 on the
  // squared scale; the library reports the Lance-Williams height directly.
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    const auto m = matrix_of(random_rows(10 + rng.below(40), 1 + rng.below(5), rng));
    const auto h = ward_merges(m);
    REQUIRE(h.size() == m.rows() - 1);
    for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i].height >= h[i - 1].height - 1e-12);
    const auto labels = hierarchical_ward(m, 8).labels;
    CHECK(std::set<int>(labels.begin(), labels.end()).size() == 8);
  }
}

TEST_CASE("random forest dissimilarity") {
  Rng rng(41);
  auto rows = random_rows(30, 4, rng);
  rows.push_back(rows[3]);  // duplicate of row 3
  const auto m = matrix_of(rows);
  const auto d = rf_dissimilarity(m, 5, ForestOptions{500});
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d(i, i) == 0.0);
    for (std::size_t j = 0; j < d.size(); ++j) {
      CHECK(d(i, j) == d(j, i));
      CHECK(d(i, j) >= 0.0);
      CHECK(d(i, j) <= 1.0);
    }
  }
  CHECK(d(3, 30) < 0.2);

  const auto again = rf_dissimilarity(m, 5, ForestOptions{50}, 1);
  const auto threaded = rf_dissimilarity(m, 5, ForestOptions{50}, 3);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) CHECK(again(i, j) == threaded(i, j));
}

TEST_CASE("PAM") {
  SUBCASE("k equals n") {
    const DissimilarityMatrix d({"a", "b", "c"}, {{0, 1, 2}, {1, 0, 1.5}, {2, 1.5, 0}});
    const auto p = pam(d, 3, 1);
    CHECK(p.labels == std::vector<int>{1, 2, 3});
    CHECK(medoid_cost(d, p.medoids) == 0.0);
  }
  SUBCASE("two tight groups match the exhaustive medoid pair") {
    const DissimilarityMatrix d({"a", "b", "c", "d"},
                                {{0, 0.1, 0.9, 0.8}, {0.1, 0, 0.85, 0.95}, {0.9, 0.85, 0, 0.2}, {0.8, 0.95, 0.2, 0}});
    const auto p = pam(d, 2, 1);
    double best = INFINITY;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) best = std::min(best, medoid_cost(d, {i, j}));
    CHECK(medoid_cost(d, p.medoids) == doctest::Approx(best));
    CHECK(p.labels == std::vector<int>{1, 1, 2, 2});
    CHECK(pam(d, 2, 1).labels == pam(d, 2, 1).labels);
  }
  SUBCASE("cost never increases across swaps") {
    Rng rng(53);
    for (int t = 0; t < 50; ++t) {
      const auto n = 20 + rng.below(30);
      std::vector<std::string> ids;
      for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
      const auto pts = random_rows(n, 2, rng);
      std::vector<std::vector<double>> v(n, std::vector<double>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v[i][j] = std::sqrt(squared_euclidean(pts[i], pts[j]));
      const auto p = pam(DissimilarityMatrix(ids, v), 8, rng.next_u64());
      REQUIRE_FALSE(p.trace.empty());
      for (std::size_t i = 1; i < p.trace.size(); ++i) CHECK(p.trace[i] <= p.trace[i - 1] + 1e-12);
      check_labels(p, 8);
    }
  }
}

TEST_CASE("run_suite") {
  std::vector<int> truth;
  const auto m = minmax_normalize(matrix_of(blobs(8, 6, 3, 77, &truth)));
  SuiteOptions options;
  options.forest.trees = 100;
  const auto a = run_suite(m, 8, 11, options);
  CHECK(a.failures.empty());
  REQUIRE(a.partitions.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(a.partitions[i].algorithm == default_algorithms()[i]);
    CHECK(a.partitions[i].k == 8);
    CHECK(a.partitions[i].seed == (a.partitions[i].algorithm == "hier" ? 0u : 11u));
    check_labels(a.partitions[i], 8);
  }
  const auto b = run_suite(m, 8, 11, options);
  for (std::size_t i = 0; i < 5; ++i) CHECK(a.partitions[i].labels == b.partitions[i].labels);

  const auto tiny = run_suite(matrix_of({{0.0}, {1.0}, {0.5}}), 8, 1, options);
  CHECK(tiny.partitions.empty());
  CHECK(tiny.failures.size() == 5);
}
