#include "motifvar/validity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "motifvar/error.hpp"
#include "motifvar/io.hpp"

namespace motifvar {

namespace {

double comb2(double x) { return x * (x - 1.0) / 2.0; }

double squared_record_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw config_error("record width mismatch");
  if (a.empty()) throw config_error("records have no attributes");
  double s = 0.0;
  for (std::size_t h = 0; h < a.size(); ++h) s += (a[h] - b[h]) * (a[h] - b[h]);
  return s / static_cast<double>(a.size());
}

Record mean_of(const std::vector<Record>& set) {
  Record m(set.front().size(), 0.0);
  for (const auto& r : set)
    for (std::size_t h = 0; h < m.size(); ++h) m[h] += r[h];
  for (auto& v : m) v /= static_cast<double>(set.size());
  return m;
}

}  // namespace

double record_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_record_distance(a, b));
}

// Sum over ordered pairs of d^2 equals 2N * sum_n d^2(s_n, mean), so the
// double sum collapses to a single pass around the centroid.
double within_set_distance(std::span<const Record> set) {
  if (set.empty()) throw config_error("within-set distance of an empty set");
  const std::vector<Record> copy(set.begin(), set.end());
  const Record centroid = mean_of(copy);
  double s = 0.0;
  for (const auto& r : set) s += squared_record_distance(r, centroid);
  return std::sqrt(s);
}

std::vector<std::vector<Record>> cluster_members(const Partition& partition, const FeatureMatrix& matrix) {
  if (partition.labels.size() != matrix.rows()) throw config_error("partition does not match the feature matrix");
  std::map<int, std::vector<Record>> by_label;
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    const int l = partition.labels[i];
    if (l < 1 || l > partition.k) throw config_error("label outside 1..k");
    by_label[l].emplace_back(matrix.row(i).begin(), matrix.row(i).end());
  }
  if (by_label.empty()) throw config_error("partition has no members");
  std::vector<std::vector<Record>> out;
  for (auto& [label, members] : by_label) out.push_back(std::move(members));
  return out;
}

std::vector<Record> cluster_centers(const Partition& partition, const FeatureMatrix& matrix) {
  std::vector<Record> centers;
  for (const auto& members : cluster_members(partition, matrix)) centers.push_back(mean_of(members));
  return centers;
}

double mia(const Partition& partition, const FeatureMatrix& matrix, MiaForm form) {
  const auto clusters = cluster_members(partition, matrix);
  double total = 0.0;
  for (const auto& members : clusters) {
    const Record center = mean_of(members);
    double s = 0.0;
    for (const auto& r : members) s += squared_record_distance(r, center);
    total += form == MiaForm::normalized ? s / static_cast<double>(members.size()) : s;
  }
  return std::sqrt(total / static_cast<double>(clusters.size()));
}

std::optional<double> cdi(const Partition& partition, const FeatureMatrix& matrix) {
  const auto clusters = cluster_members(partition, matrix);
  std::vector<Record> centers;
  double within = 0.0;
  for (const auto& members : clusters) {
    centers.push_back(mean_of(members));
    const double d = within_set_distance(members);
    within += d * d;
  }
  const double between = within_set_distance(centers);
  if (!(between > 0.0)) return std::nullopt;
  return std::sqrt(within / static_cast<double>(clusters.size())) / between;
}

double corrected_rand(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw config_error("corrected Rand: partitions differ in size");
  if (a.size() < 2) throw config_error("corrected Rand: need at least 2 items");
  const auto compress = [](std::span<const int> labels) {
    std::vector<int> levels(labels.begin(), labels.end());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::vector<std::size_t> codes(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
      codes[i] = static_cast<std::size_t>(std::lower_bound(levels.begin(), levels.end(), labels[i]) - levels.begin());
    return std::pair{codes, levels.size()};
  };
  const auto [ca, ra] = compress(a);
  const auto [cb, rb] = compress(b);
  std::vector<double> cells(ra * rb, 0.0), rows(ra, 0.0), cols(rb, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    cells[ca[i] * rb + cb[i]] += 1.0;
    rows[ca[i]] += 1.0;
    cols[cb[i]] += 1.0;
  }
  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (double n : cells) index += comb2(n);
  for (double n : rows) sum_a += comb2(n);
  for (double n : cols) sum_b += comb2(n);
  const double expected = sum_a * sum_b / comb2(static_cast<double>(a.size()));
  const double max_index = 0.5 * (sum_a + sum_b);
  // Zero denominator only when both partitions are all-singletons or both a
  // single block, i.e. identical.
  if (max_index - expected == 0.0) return 1.0;
  return (index - expected) / (max_index - expected);
}

double corrected_rand(const Partition& a, const Partition& b) {
  if (a.ids != b.ids) throw config_error("corrected Rand: partitions cover different households");
  return corrected_rand(a.labels, b.labels);
}

ValidityReport consistency_report(std::span<const Partition> partitions, const FeatureMatrix& matrix, MiaForm form,
                                  std::string feature_set) {
  if (partitions.size() < 2) throw config_error("consistency report needs at least 2 partitions");
  ValidityReport report;
  report.feature_set = std::move(feature_set);
  report.households = matrix.rows();
  report.mia_form = form;
  for (const auto& p : partitions) {
    PartitionQuality q;
    q.algorithm = p.algorithm;
    for (const auto& members : cluster_members(p, matrix)) q.cluster_sizes.push_back(members.size());
    std::sort(q.cluster_sizes.begin(), q.cluster_sizes.end());
    q.mia = mia(p, matrix, form);
    q.mia_raw = mia(p, matrix, MiaForm::raw);
    q.cdi = cdi(p, matrix);
    report.partitions.push_back(std::move(q));
  }
  const std::size_t m = partitions.size();
  report.rand.assign(m, std::vector<double>(m, 1.0));
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double r = corrected_rand(partitions[i], partitions[j]);
      report.rand[i][j] = report.rand[j][i] = r;
      total += r;
    }
  }
  report.mean_offdiagonal_rand = total / static_cast<double>(m * (m - 1) / 2);
  return report;
}

nlohmann::ordered_json to_json(const ValidityReport& report) {
  nlohmann::ordered_json j;
  j["feature_set"] = report.feature_set;
  j["households"] = report.households;
  j["mia_form"] = report.mia_form == MiaForm::normalized ? "normalized" : "raw";
  auto parts = nlohmann::ordered_json::array();
  for (const auto& q : report.partitions) {
    nlohmann::ordered_json e;
    e["algorithm"] = q.algorithm;
    e["cluster_sizes"] = q.cluster_sizes;
    e["mia"] = q.mia;
    e["mia_raw"] = q.mia_raw;
    e["cdi"] = q.cdi ? nlohmann::ordered_json(*q.cdi) : nlohmann::ordered_json(nullptr);
    e["cdi_defined"] = q.cdi.has_value();
    parts.push_back(std::move(e));
  }
  j["partitions"] = std::move(parts);
  auto names = nlohmann::ordered_json::array();
  for (const auto& q : report.partitions) names.push_back(q.algorithm);
  j["rand"] = {{"algorithms", names}, {"matrix", report.rand}};
  j["mean_offdiagonal_rand"] = report.mean_offdiagonal_rand;
  return j;
}

void write_quality_table(std::ostream& out, const ValidityReport& report) {
  out << "algorithm,cluster_sizes,mia,cdi\n";
  for (const auto& q : report.partitions) {
    out << q.algorithm << ',';
    for (std::size_t i = 0; i < q.cluster_sizes.size(); ++i) out << (i ? ";" : "") << q.cluster_sizes[i];
    out << ',' << format_number(q.mia) << ',' << (q.cdi ? format_number(*q.cdi) : std::string("NA")) << '\n';
  }
}

void write_rand_table(std::ostream& out, const ValidityReport& report) {
  out << "algorithm";
  for (const auto& q : report.partitions) out << ',' << q.algorithm;
  out << '\n';
  for (std::size_t i = 0; i < report.partitions.size(); ++i) {
    out << report.partitions[i].algorithm;
    for (double v : report.rand[i]) out << ',' << format_number(v);
    out << '\n';
  }
}

}  // namespace motifvar
