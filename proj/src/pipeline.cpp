#include "motifvar/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "motifvar/error.hpp"
#include "motifvar/io.hpp"
#include "motifvar/plot.hpp"
#include "motifvar/synth.hpp"
#include "motifvar/validity.hpp"

namespace motifvar {

namespace fs = std::filesystem;

std::string artifacts::partition(const std::string& algorithm) { return "partition_" + algorithm + ".csv"; }

void RunConfig::validate() const {
  if (!TimeZone::from_name(timezone)) throw config_error("unknown time zone " + timezone);
  if (peak_start_minutes % kSlotMinutes != 0 || peak_end_minutes % kSlotMinutes != 0)
    throw config_error("peak bounds must be multiples of 5 minutes");
  if (peak_start_minutes < 0 || peak_end_minutes > 24 * 60 || peak_start_minutes >= peak_end_minutes)
    throw config_error("peak window must satisfy 00:00 <= start < end <= 24:00");
  if (season != "any" && !parse_season(season)) throw config_error("unknown season " + season);
  if (day_type != "any" && !parse_day_type(day_type)) throw config_error("unknown day type " + day_type);
  if (min_days < 1) throw config_error("min-days must be at least 1");
  if (max_gap_minutes < 0) throw config_error("max-gap-minutes must be non-negative");
  if (!(max_reject_fraction >= 0.0 && max_reject_fraction <= 1.0))
    throw config_error("max reject fraction must be in [0, 1]");
  sax.validate();
  if (k < 2) throw config_error("k must be at least 2");
  if (algorithms.empty()) throw config_error("no algorithms selected");
  std::set<std::string> seen;
  for (const auto& a : algorithms) {
    const auto& known = default_algorithms();
    if (std::find(known.begin(), known.end(), a) == known.end()) throw config_error("unknown algorithm " + a);
    if (!seen.insert(a).second) throw config_error("algorithm listed twice: " + a);
  }
  if (!(fuzzifier > 1.0)) throw config_error("fuzzifier must be greater than 1");
  if (rf_trees < 1) throw config_error("rf-trees must be at least 1");
  if (init != "random" && init != "kmeanspp") throw config_error("init must be random or kmeanspp");
  if (som_epochs < 1) throw config_error("som epochs must be at least 1");
  if (threads < 1) throw config_error("threads must be at least 1");
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["input"] = c.input.string();
  j["scenario"] = c.scenario.string();
  j["holidays"] = c.holidays.string();
  j["out_dir"] = c.out_dir.string();
  j["threads"] = c.threads;
  j["timezone"] = c.timezone;
  j["peak_start"] = format_clock(c.peak_start_minutes);
  j["peak_end"] = format_clock(c.peak_end_minutes);
  j["season"] = c.season;
  j["day_type"] = c.day_type;
  j["min_days"] = c.min_days;
  j["max_gap_minutes"] = c.max_gap_minutes;
  j["max_reject_fraction"] = c.max_reject_fraction;
  j["alphabet"] = c.sax.alphabet_size;
  j["motif_len"] = c.sax.motif_len;
  j["noise_floor_watts"] = c.sax.noise_floor_watts;
  j["include_final_window"] = c.sax.include_final_window;
  j["features"] = to_string(c.features);
  j["k"] = c.k;
  j["algorithms"] = c.algorithms;
  j["seed"] = c.seed;
  j["fuzzifier"] = c.fuzzifier;
  j["rf_trees"] = c.rf_trees;
  j["init"] = c.init;
  j["som_epochs"] = c.som_epochs;
  j["mia_raw"] = c.mia_raw;
  return j;
}

namespace {

int clock_value(const nlohmann::json& v, const char* key) {
  const auto m = parse_clock(v.get<std::string>());
  if (!m) throw config_error(std::string("manifest: bad clock for ") + key);
  return *m;
}

}  // namespace

RunConfig run_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw config_error("manifest must be a JSON object");
  RunConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "input") c.input = v.get<std::string>();
      else if (key == "scenario") c.scenario = v.get<std::string>();
      else if (key == "holidays") c.holidays = v.get<std::string>();
      else if (key == "out_dir") c.out_dir = v.get<std::string>();
      else if (key == "threads") c.threads = v.get<int>();
      else if (key == "timezone") c.timezone = v.get<std::string>();
      else if (key == "peak_start") c.peak_start_minutes = clock_value(v, "peak_start");
      else if (key == "peak_end") c.peak_end_minutes = clock_value(v, "peak_end");
      else if (key == "season") c.season = v.get<std::string>();
      else if (key == "day_type") c.day_type = v.get<std::string>();
      else if (key == "min_days") c.min_days = v.get<int>();
      else if (key == "max_gap_minutes") c.max_gap_minutes = v.get<int>();
      else if (key == "max_reject_fraction") c.max_reject_fraction = v.get<double>();
      else if (key == "alphabet") c.sax.alphabet_size = v.get<int>();
      else if (key == "motif_len") c.sax.motif_len = v.get<int>();
      else if (key == "noise_floor_watts") c.sax.noise_floor_watts = v.get<double>();
      else if (key == "include_final_window") c.sax.include_final_window = v.get<bool>();
      else if (key == "features") {
        const auto mode = parse_feature_mode(v.get<std::string>());
        if (!mode) throw config_error("manifest: unknown feature mode");
        c.features = *mode;
      } else if (key == "k") c.k = v.get<int>();
      else if (key == "algorithms") c.algorithms = v.get<std::vector<std::string>>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "fuzzifier") c.fuzzifier = v.get<double>();
      else if (key == "rf_trees") c.rf_trees = v.get<int>();
      else if (key == "init") c.init = v.get<std::string>();
      else if (key == "som_epochs") c.som_epochs = v.get<int>();
      else if (key == "mia_raw") c.mia_raw = v.get<bool>();
      else throw config_error("manifest: unknown key " + key);
    }
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("manifest: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig read_manifest(const fs::path& path) {
  auto in = open_input(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("parse-error", "manifest " + path.string() + ": " + e.what());
  }
  return run_config_from_json(j);
}

namespace {

fs::path out_path(const RunConfig& c, const std::string& name) { return c.out_dir / name; }

void ensure_out_dir(const RunConfig& c) {
  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  if (ec) throw Error("output-error", "cannot create " + c.out_dir.string() + ": " + ec.message());
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ostringstream out;
  writer(out);
  write_text_file(path, out.str());
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

TimeZone zone_of(const RunConfig& c) { return *TimeZone::from_name(c.timezone); }

PeakFilter peak_filter(const RunConfig& c) {
  PeakFilter f;
  f.season = c.season == "any" ? std::nullopt : parse_season(c.season);
  f.day_type = c.day_type == "any" ? std::nullopt : parse_day_type(c.day_type);
  f.peak_start_minutes = c.peak_start_minutes;
  f.peak_end_minutes = c.peak_end_minutes;
  return f;
}

WindowsByHousehold load_windows(const RunConfig& c) {
  auto in = open_input(out_path(c, artifacts::windows));
  return group_windows(read_windows_csv(in));
}

FeatureMatrix load_features(const RunConfig& c) {
  auto in = open_input(out_path(c, artifacts::features));
  return read_feature_matrix_csv(in);
}

SuiteOptions suite_options(const RunConfig& c) {
  SuiteOptions o;
  o.algorithms = c.algorithms;
  o.kmeans.init = c.init == "kmeanspp" ? KMeansInit::kmeanspp : KMeansInit::random;
  o.fuzzy.fuzzifier = c.fuzzifier;
  o.som.epochs = c.som_epochs;
  o.forest.trees = c.rf_trees;
  o.threads = c.threads;
  return o;
}

void try_plot(const fs::path& path, const std::function<std::string()>& render) {
  try {
    write_text_file(path, render());
  } catch (const std::exception& e) {
    std::cerr << "warning[plot-failed]: " << path.filename().string() << ": " << e.what() << '\n';
  }
}

}  // namespace

void stage_synth(const RunConfig& config) {
  config.validate();
  if (config.scenario.empty()) throw config_error("synth needs --scenario");
  const auto scenario = read_scenario_file(config.scenario);
  ensure_out_dir(config);
  const auto out = generate(scenario, config.threads);
  write_file(out_path(config, artifacts::readings), [&](std::ostream& o) { write_readings_csv(o, out.readings); });
  write_file(out_path(config, artifacts::truth), [&](std::ostream& o) { write_truth_csv(o, out.truth); });
}

void stage_ingest(const RunConfig& config) {
  config.validate();
  fs::path input = config.input;
  if (input.empty()) {
    if (config.scenario.empty()) throw config_error("ingest needs --input or --scenario");
    input = out_path(config, artifacts::readings);
  }
  const TimeZone zone = zone_of(config);
  ParseOptions parse;
  parse.zone = zone;
  parse.max_reject_fraction = config.max_reject_fraction;
  const auto report = read_readings_file(input, parse);
  std::set<Date> holidays;
  if (!config.holidays.empty()) holidays = read_holidays_file(config.holidays);
  ensure_out_dir(config);

  AlignOptions align;
  align.max_gap_minutes = config.max_gap_minutes;
  const auto batch = align_households(group_by_household(report.readings), align, config.threads);
  auto dropped = batch.dropped;

  const PeakFilter filter = peak_filter(config);
  WindowsByHousehold windows;
  for (const auto& series : batch.series) {
    const auto labels = label_days(local_dates(series, zone), holidays);
    windows[series.household_id] = extract_peak_windows(series, labels, filter, zone);
  }
  const auto kept = filter_households(windows, config.min_days);
  std::vector<PeakDayWindow> retained;
  for (const auto& [id, list] : windows) {
    if (!kept.count(id)) {
      dropped.push_back({id, "fewer than " + std::to_string(config.min_days) + " valid peak days"});
      continue;
    }
    retained.insert(retained.end(), list.begin(), list.end());
  }
  std::sort(dropped.begin(), dropped.end(),
            [](const DroppedHousehold& a, const DroppedHousehold& b) { return a.household_id < b.household_id; });

  write_file(out_path(config, artifacts::rejects), [&](std::ostream& o) {
    o << "line,reason,text\n";
    for (const auto& r : report.rejects) o << r.line << ',' << csv_quote(r.reason) << ',' << csv_quote(r.text) << '\n';
  });
  write_file(out_path(config, artifacts::dropped), [&](std::ostream& o) {
    o << "household_id,reason\n";
    for (const auto& d : dropped) o << d.household_id << ',' << csv_quote(d.reason) << '\n';
  });
  if (retained.empty()) throw Error("no-households", "no household has " + std::to_string(config.min_days) +
                                                         " valid peak days");
  write_file(out_path(config, artifacts::windows), [&](std::ostream& o) { write_windows_csv(o, retained); });
}

void stage_features(const RunConfig& config) {
  config.validate();
  const auto windows = load_windows(config);
  const auto matrix =
      feature_matrix(windows, config.features, config.sax, config.peak_start_minutes, config.threads);
  write_file(out_path(config, artifacts::features), [&](std::ostream& o) { write_feature_matrix_csv(o, matrix); });
  if (config.features == FeatureMode::motif) {
    const auto catalogs = build_catalogs(windows, config.sax, config.threads);
    write_file(out_path(config, artifacts::motifs), [&](std::ostream& o) { write_catalog_csv(o, catalogs); });
  }
}

void stage_cluster(const RunConfig& config) {
  config.validate();
  const auto matrix = minmax_normalize(load_features(config));
  if (static_cast<std::size_t>(config.k) > matrix.rows())
    throw config_error("k = " + std::to_string(config.k) + " exceeds the " + std::to_string(matrix.rows()) +
                       " households");
  const auto result = run_suite(matrix, config.k, config.seed, suite_options(config));
  for (const auto& p : result.partitions)
    write_file(out_path(config, artifacts::partition(p.algorithm)),
               [&](std::ostream& o) { write_partition_csv(o, p); });
  for (const auto& [alg, why] : result.failures) {
    std::error_code ec;
    fs::remove(out_path(config, artifacts::partition(alg)), ec);
    std::cerr << "warning[algorithm-failed]: " << alg << ": " << why << '\n';
  }
  if (result.partitions.empty()) throw Error("cluster-failed", "every clustering algorithm failed");
}

void stage_report(const RunConfig& config) {
  config.validate();
  const auto raw = load_features(config);
  const auto matrix = minmax_normalize(raw);
  std::vector<Partition> partitions;
  for (const auto& alg : config.algorithms) {
    const auto path = out_path(config, artifacts::partition(alg));
    if (!fs::exists(path)) continue;
    auto in = open_input(path);
    auto p = read_partition_csv(in);
    p.k = std::max(p.k, config.k);
    if (p.ids != matrix.ids()) throw Error("parse-error", path.string() + " does not match " + artifacts::features);
    partitions.push_back(std::move(p));
  }
  if (partitions.size() < 2) throw Error("input-not-found", "report needs at least two partition files");

  const auto report = consistency_report(partitions, matrix, config.mia_raw ? MiaForm::raw : MiaForm::normalized,
                                         to_string(config.features));
  write_file(out_path(config, artifacts::validity), [&](std::ostream& o) { o << to_json(report).dump(2) << '\n'; });
  write_file(out_path(config, artifacts::table1), [&](std::ostream& o) { write_quality_table(o, report); });
  write_file(out_path(config, artifacts::table2), [&](std::ostream& o) { write_rand_table(o, report); });

  // Plots are best effort: a failure here never fails the run.
  try {
    const auto plots = out_path(config, artifacts::plots);
    fs::create_directories(plots);
    const auto windows = load_windows(config);
    const auto catalogs = build_catalogs(windows, config.sax, config.threads);
    const auto profiles =
        feature_matrix(windows, FeatureMode::profile, config.sax, config.peak_start_minutes, config.threads);
    const auto motif = config.features == FeatureMode::motif
                           ? raw
                           : feature_matrix(windows, FeatureMode::motif, config.sax, config.peak_start_minutes,
                                            config.threads);
    for (const auto& p : partitions) {
      try_plot(plots / ("timing_" + p.algorithm + ".svg"), [&] {
        return svg_timing_scatter(p, catalogs, config.peak_start_minutes, config.peak_end_minutes);
      });
      try_plot(plots / ("profiles_" + p.algorithm + ".svg"),
               [&] { return svg_profile_overlay(p, profiles, config.peak_start_minutes); });
      try_plot(plots / ("summary_" + p.algorithm + ".svg"), [&] { return svg_cluster_summary(p, motif); });
    }
  } catch (const std::exception& e) {
    std::cerr << "warning[plot-failed]: " << e.what() << '\n';
  }
}

void run_pipeline(const RunConfig& config) {
  config.validate();
  ensure_out_dir(config);
  if (config.input.empty()) stage_synth(config);
  stage_ingest(config);
  stage_features(config);
  stage_cluster(config);
  stage_report(config);
  write_file(out_path(config, artifacts::manifest), [&](std::ostream& o) { o << to_json(config).dump(2) << '\n'; });
}

}  // namespace motifvar
