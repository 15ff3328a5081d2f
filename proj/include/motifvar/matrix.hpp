#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace motifvar {

/// Row-major household x attribute matrix.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::vector<std::string> ids, std::vector<std::string> columns);
  /// Throws config-error on ragged rows or id/row count mismatch.
  FeatureMatrix(std::vector<std::string> ids, std::vector<std::string> columns,
                const std::vector<std::vector<double>>& rows);

  void append(std::string id, std::span<const double> row);

  std::size_t rows() const { return ids_.size(); }
  std::size_t width() const { return columns_.size(); }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * width(), width()}; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * width(), width()}; }
  double operator()(std::size_t i, std::size_t h) const { return data_[i * width() + h]; }
  double& operator()(std::size_t i, std::size_t h) { return data_[i * width() + h]; }

  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<double>& data() const { return data_; }

  bool normalized = false;

 private:
  std::vector<std::string> ids_;
  std::vector<std::string> columns_;
  std::vector<double> data_;
};

/// Rescales each column to [0, 1]; constant columns become 0.
/// Throws config-error for fewer than 2 rows.
FeatureMatrix minmax_normalize(const FeatureMatrix& matrix);

double squared_euclidean(std::span<const double> a, std::span<const double> b);

/// Hard assignment of households to clusters 1..k with optional extras.
struct Partition {
  std::string algorithm;
  std::vector<std::string> ids;
  std::vector<int> labels;  // 1..k, aligned with ids
  int k = 0;
  std::vector<std::vector<double>> centers;      // center-based methods
  std::vector<std::vector<double>> memberships;  // fuzzy: rows sum to 1
  std::vector<std::size_t> medoids;              // PAM: row indices
  std::uint64_t seed = 0;
  std::map<std::string, std::string> parameters;
  /// Per-iteration objective history: k-means WCSS, fuzzy worst row-sum
  /// error, SOM quantization error per epoch, Ward merge heights, PAM cost.
  std::vector<double> trace;

  std::size_t size() const { return labels.size(); }
  /// Member count per label 1..k (index 0 is label 1).
  std::vector<std::size_t> cluster_sizes() const;
};

/// Symmetric, non-negative, zero diagonal. Stored dense.
class DissimilarityMatrix {
 public:
  DissimilarityMatrix() = default;
  explicit DissimilarityMatrix(std::vector<std::string> ids);
  /// Throws config-error when `values` is not n x n, not symmetric, has a
  /// non-zero diagonal or a negative entry.
  DissimilarityMatrix(std::vector<std::string> ids, const std::vector<std::vector<double>>& values);

  std::size_t size() const { return ids_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * size() + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    d_[i * size() + j] = v;
    d_[j * size() + i] = v;
  }
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::vector<std::string> ids_;
  std::vector<double> d_;
};

}  // namespace motifvar
