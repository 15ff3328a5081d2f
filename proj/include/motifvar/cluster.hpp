#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "motifvar/matrix.hpp"

namespace motifvar {

// k-means ---------------------------------------------------------------

enum class KMeansInit { random, kmeanspp };

struct KMeansOptions {
  KMeansInit init = KMeansInit::random;
  int max_iterations = 300;
};

/// Lloyd iterations from k distinct random rows. An emptied cluster is
/// reseeded with the point farthest from its own center. trace holds WCSS
/// after every center update.
Partition kmeans(const FeatureMatrix& matrix, int k, std::uint64_t seed, const KMeansOptions& options = {});

/// Within-cluster sum of squared Euclidean distances; labels run 1..k and
/// index `centers`.
double within_cluster_ss(const FeatureMatrix& matrix, const std::vector<int>& labels,
                         const std::vector<std::vector<double>>& centers);

// fuzzy c-means ---------------------------------------------------------

struct FuzzyOptions {
  double fuzzifier = 2.0;
  double tolerance = 1e-6;
  int max_iterations = 300;
};

/// Membership of each row in each center. A row that coincides with one or
/// more centers splits its membership evenly among them.
std::vector<std::vector<double>> fuzzy_memberships(const FeatureMatrix& matrix,
                                                   const std::vector<std::vector<double>>& centers,
                                                   double fuzzifier);

/// Alternates center and membership updates from a random row-stochastic
/// start. Labels take the highest membership, lowest label on ties. trace
/// holds the worst |row sum - 1| seen in each iteration.
Partition fuzzy_cmeans(const FeatureMatrix& matrix, int k, std::uint64_t seed, const FuzzyOptions& options = {});

// self-organizing map ---------------------------------------------------

struct SomOptions {
  int columns = 0;  // 0: derived from k
  int rows = 0;
  int epochs = 500;
  double alpha_start = 0.05;
  double alpha_end = 0.01;
  double radius_end = 1.0;
};

struct HexUnit {
  double x = 0.0;
  double y = 0.0;
};

/// Unit coordinates of a columns x rows hexagonal lattice (odd rows shifted
/// half a unit), unit index = row * columns + column.
std::vector<HexUnit> hex_lattice(int columns, int rows);

/// The most nearly square columns x rows factorization of k, columns >= rows.
std::pair<int, int> som_shape(int k);

/// Online SOM with one unit per cluster. Learning rate and neighbourhood
/// radius decay linearly; units strictly inside the radius are updated, so a
/// final radius of 1 means only the winner moves. trace holds the mean
/// quantization error after each epoch.
Partition som(const FeatureMatrix& matrix, int k, std::uint64_t seed, const SomOptions& options = {});

// Ward hierarchical -----------------------------------------------------

struct Merge {
  std::size_t a = 0;  // representative (lowest) original index of each side
  std::size_t b = 0;
  double height = 0.0;
};

/// Full agglomeration: n-1 merges with Lance-Williams Ward updates on
/// squared Euclidean distances. Heights are reported on the Euclidean scale.
std::vector<Merge> ward_merges(const FeatureMatrix& matrix);

/// Cuts the Ward dendrogram to exactly k clusters. Labels follow the order of
/// each cluster's first member. trace holds the merge heights.
Partition hierarchical_ward(const FeatureMatrix& matrix, int k);

// random forest dissimilarity + PAM -------------------------------------

struct ForestOptions {
  int trees = 500;
  int mtry = 0;  // 0: floor(sqrt(width)), at least 1
  int min_leaf = 1;
};

/// Unsupervised random forest. Real rows form class 1, an equal number of
/// rows built by permuting each column independently form class 2. Each
/// tree is grown on a bootstrap sample to purity with Gini splits over mtry
/// random attributes. Proximity counts the trees in which two real rows share
/// a leaf; dissimilarity is sqrt(1 - proximity).
DissimilarityMatrix rf_dissimilarity(const FeatureMatrix& matrix, std::uint64_t seed,
                                     const ForestOptions& options = {}, int threads = 1);

/// BUILD then SWAP to a local optimum. Labels follow ascending medoid index;
/// trace holds the total cost after BUILD and after every swap.
Partition pam(const DissimilarityMatrix& dissim, int k, std::uint64_t seed);

/// Sum over points of the dissimilarity to the nearest medoid.
double medoid_cost(const DissimilarityMatrix& dissim, const std::vector<std::size_t>& medoids);

// suite -----------------------------------------------------------------

inline const std::vector<std::string>& default_algorithms() {
  static const std::vector<std::string> names{"kmeans", "fuzzy", "som", "hier", "rfpam"};
  return names;
}

struct SuiteOptions {
  std::vector<std::string> algorithms = default_algorithms();
  KMeansOptions kmeans;
  FuzzyOptions fuzzy;
  SomOptions som;
  ForestOptions forest;
  int threads = 1;
};

struct SuiteResult {
  std::vector<Partition> partitions;  // in the requested algorithm order
  std::map<std::string, std::string> failures;
};

/// Runs each requested algorithm with the shared seed. A failing algorithm is
/// recorded in `failures` and the rest still run.
SuiteResult run_suite(const FeatureMatrix& matrix, int k, std::uint64_t seed, const SuiteOptions& options = {});

}  // namespace motifvar
