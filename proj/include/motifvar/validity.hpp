#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "motifvar/matrix.hpp"

namespace motifvar {

using Record = std::vector<double>;

/// sqrt((1/H) * sum_h (a_h - b_h)^2). Throws config-error on width mismatch.
double record_distance(std::span<const double> a, std::span<const double> b);

/// sqrt((1/(2N)) * sum over ordered pairs of d^2). Throws config-error if empty.
double within_set_distance(std::span<const Record> set);

enum class MiaForm {
  normalized,  // per-cluster mean of squared distances (RMS within each cluster)
  raw,         // per-cluster sum, as the formula is usually printed
};

/// Members of each occupied cluster, in label order. Labels with no members
/// are not clusters. Throws config-error on labels outside 1..k or a row
/// count mismatch.
std::vector<std::vector<Record>> cluster_members(const Partition& partition, const FeatureMatrix& matrix);

/// Arithmetic mean of each occupied cluster.
std::vector<Record> cluster_centers(const Partition& partition, const FeatureMatrix& matrix);

/// Mean index adequacy, centers = member means for every algorithm.
double mia(const Partition& partition, const FeatureMatrix& matrix, MiaForm form = MiaForm::normalized);

/// Cluster dispersion indicator; nullopt when the cluster centers coincide.
std::optional<double> cdi(const Partition& partition, const FeatureMatrix& matrix);

/// Hubert-Arabie adjusted Rand index from the contingency table. Labels may be
/// any integers. Throws config-error for fewer than 2 items or length mismatch.
double corrected_rand(std::span<const int> a, std::span<const int> b);

/// As above; also requires both partitions to cover the same households in
/// the same order.
double corrected_rand(const Partition& a, const Partition& b);

struct PartitionQuality {
  std::string algorithm;
  std::vector<std::size_t> cluster_sizes;  // occupied clusters, ascending
  double mia = 0.0;
  double mia_raw = 0.0;
  std::optional<double> cdi;
};

struct ValidityReport {
  std::string feature_set;
  std::size_t households = 0;
  MiaForm mia_form = MiaForm::normalized;
  std::vector<PartitionQuality> partitions;
  std::vector<std::vector<double>> rand;  // corrected Rand, partitions x partitions
  double mean_offdiagonal_rand = 0.0;
};

/// Quality per partition plus the pairwise corrected Rand matrix.
/// Throws config-error for fewer than 2 partitions.
ValidityReport consistency_report(std::span<const Partition> partitions, const FeatureMatrix& matrix,
                                  MiaForm form = MiaForm::normalized, std::string feature_set = {});

nlohmann::ordered_json to_json(const ValidityReport& report);

/// algorithm,cluster_sizes,mia,cdi  (cluster sizes joined with ';').
void write_quality_table(std::ostream& out, const ValidityReport& report);

/// Square corrected-Rand matrix with algorithm names on both axes.
void write_rand_table(std::ostream& out, const ValidityReport& report);

}  // namespace motifvar
