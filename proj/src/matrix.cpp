#include "motifvar/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "motifvar/error.hpp"

namespace motifvar {

FeatureMatrix::FeatureMatrix(std::vector<std::string> ids, std::vector<std::string> columns)
    : ids_(std::move(ids)), columns_(std::move(columns)), data_(ids_.size() * columns_.size(), 0.0) {}

FeatureMatrix::FeatureMatrix(std::vector<std::string> ids, std::vector<std::string> columns,
                             const std::vector<std::vector<double>>& rows)
    : columns_(std::move(columns)) {
  if (ids.size() != rows.size()) throw config_error("feature matrix: id count differs from row count");
  for (std::size_t i = 0; i < rows.size(); ++i) append(std::move(ids[i]), rows[i]);
}

void FeatureMatrix::append(std::string id, std::span<const double> row) {
  if (row.size() != width()) throw config_error("feature matrix: row width mismatch for " + id);
  ids_.push_back(std::move(id));
  data_.insert(data_.end(), row.begin(), row.end());
}

FeatureMatrix minmax_normalize(const FeatureMatrix& matrix) {
  if (matrix.rows() < 2) throw config_error("normalization needs at least 2 rows");
  FeatureMatrix out = matrix;
  for (std::size_t h = 0; h < matrix.width(); ++h) {
    double lo = matrix(0, h), hi = matrix(0, h);
    for (std::size_t i = 1; i < matrix.rows(); ++i) {
      lo = std::min(lo, matrix(i, h));
      hi = std::max(hi, matrix(i, h));
    }
    const double span = hi - lo;
    for (std::size_t i = 0; i < matrix.rows(); ++i)
      out(i, h) = span > 0.0 ? std::clamp((matrix(i, h) - lo) / span, 0.0, 1.0) : 0.0;
  }
  out.normalized = true;
  return out;
}

double squared_euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t h = 0; h < a.size(); ++h) {
    const double d = a[h] - b[h];
    s += d * d;
  }
  return s;
}

std::vector<std::size_t> Partition::cluster_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(std::max(k, 0)), 0);
  for (int label : labels)
    if (label >= 1 && label <= k) ++sizes[static_cast<std::size_t>(label - 1)];
  return sizes;
}

DissimilarityMatrix::DissimilarityMatrix(std::vector<std::string> ids)
    : ids_(std::move(ids)), d_(ids_.size() * ids_.size(), 0.0) {}

DissimilarityMatrix::DissimilarityMatrix(std::vector<std::string> ids, const std::vector<std::vector<double>>& values)
    : DissimilarityMatrix(std::move(ids)) {
  const std::size_t n = size();
  if (values.size() != n) throw config_error("dissimilarity: wrong row count");
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i].size() != n) throw config_error("dissimilarity: wrong column count");
    if (values[i][i] != 0.0) throw config_error("dissimilarity: non-zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      if (values[i][j] < 0.0 || !std::isfinite(values[i][j])) throw config_error("dissimilarity: negative entry");
      if (values[i][j] != values[j][i]) throw config_error("dissimilarity: not symmetric");
      d_[i * n + j] = values[i][j];
    }
  }
}

}  // namespace motifvar
