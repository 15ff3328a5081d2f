#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "motifvar/cluster.hpp"
#include "motifvar/features.hpp"
#include "motifvar/sax.hpp"

namespace motifvar {

/// Every parameter of a run. A manifest is this structure as JSON, and a
/// manifest alone reproduces the run.
struct RunConfig {
  // inputs and outputs
  std::filesystem::path input;     // readings CSV (optionally .gz)
  std::filesystem::path scenario;  // synth scenario, used when input is empty
  std::filesystem::path holidays;
  std::filesystem::path out_dir = "motifvar-out";
  int threads = 1;

  // ingest
  std::string timezone = "Europe/London";
  int peak_start_minutes = 16 * 60;
  int peak_end_minutes = 20 * 60;
  std::string season = "spring";     // or "any"
  std::string day_type = "working";  // or "any"
  int min_days = 4;
  int max_gap_minutes = 15;
  double max_reject_fraction = 0.10;

  // symbolization and features
  SaxParams sax;
  FeatureMode features = FeatureMode::motif;

  // clustering and validity
  int k = 8;
  std::vector<std::string> algorithms = default_algorithms();
  std::uint64_t seed = 1;
  double fuzzifier = 2.0;
  int rf_trees = 500;
  std::string init = "random";  // or "kmeanspp"
  int som_epochs = 500;
  bool mia_raw = false;

  /// Throws config-error on any inconsistent or unknown value.
  void validate() const;
};

nlohmann::ordered_json to_json(const RunConfig& config);
/// Missing keys keep their defaults; unknown keys are a config-error.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig read_manifest(const std::filesystem::path& path);

/// File names inside out_dir.
namespace artifacts {
inline constexpr const char* readings = "readings.csv";
inline constexpr const char* truth = "truth.csv";
inline constexpr const char* windows = "windows.csv";
inline constexpr const char* rejects = "rejects.csv";
inline constexpr const char* dropped = "dropped.csv";
inline constexpr const char* features = "features.csv";
inline constexpr const char* motifs = "motifs.csv";
inline constexpr const char* validity = "validity.json";
inline constexpr const char* table1 = "table1.csv";
inline constexpr const char* table2 = "table2.csv";
inline constexpr const char* manifest = "manifest.json";
inline constexpr const char* plots = "plots";
std::string partition(const std::string& algorithm);
}  // namespace artifacts

/// Scenario -> readings.csv, truth.csv.
void stage_synth(const RunConfig& config);
/// Readings -> windows.csv (retained households), rejects.csv, dropped.csv.
/// The input is config.input, or the synth output when only a scenario is set.
void stage_ingest(const RunConfig& config);
/// windows.csv -> features.csv (raw), plus motifs.csv in motif mode.
void stage_features(const RunConfig& config);
/// features.csv -> min-max normalized -> partition_<algorithm>.csv each.
void stage_cluster(const RunConfig& config);
/// features.csv + partitions -> validity.json, table1.csv, table2.csv and
/// SVG plots. Plot failures are reported on stderr and do not fail the stage.
void stage_report(const RunConfig& config);
/// All stages in order, then manifest.json.
void run_pipeline(const RunConfig& config);

}  // namespace motifvar
