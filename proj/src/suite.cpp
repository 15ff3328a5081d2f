#include <optional>

#include "motifvar/cluster.hpp"
#include "motifvar/error.hpp"
#include "motifvar/parallel.hpp"

namespace motifvar {

namespace {

Partition run_one(const std::string& name, const FeatureMatrix& m, int k, std::uint64_t seed,
                  const SuiteOptions& o) {
  if (name == "kmeans") return kmeans(m, k, seed, o.kmeans);
  if (name == "fuzzy") return fuzzy_cmeans(m, k, seed, o.fuzzy);
  if (name == "som") return som(m, k, seed, o.som);
  if (name == "hier") return hierarchical_ward(m, k);
  if (name == "rfpam") {
    if (m.rows() < static_cast<std::size_t>(k)) throw config_error("rfpam: fewer rows than clusters");
    const auto d = rf_dissimilarity(m, seed, o.forest, o.threads);
    Partition p = pam(d, k, seed);
    p.parameters["trees"] = std::to_string(o.forest.trees);
    p.parameters["mtry"] = std::to_string(o.forest.mtry);
    return p;
  }
  throw config_error("unknown algorithm '" + name + "'");
}

}  // namespace

SuiteResult run_suite(const FeatureMatrix& matrix, int k, std::uint64_t seed, const SuiteOptions& options) {
  const auto& names = options.algorithms;
  std::vector<std::optional<Partition>> results(names.size());
  std::vector<std::string> errors(names.size());
  parallel_for(names.size(), options.threads, [&](std::size_t i) {
    try {
      results[i] = run_one(names[i], matrix, k, seed, options);
    } catch (const Error& e) {
      errors[i] = e.category() + ": " + e.what();
    } catch (const std::exception& e) {
      errors[i] = std::string("internal: ") + e.what();
    }
  });
  SuiteResult out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (results[i]) {
      out.partitions.push_back(std::move(*results[i]));
    } else {
      out.failures[names[i]] = errors[i];
    }
  }
  return out;
}

}  // namespace motifvar
