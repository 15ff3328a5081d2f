#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "motifvar/error.hpp"
#include "motifvar/pipeline.hpp"
#include "motifvar/timeutil.hpp"

namespace {

using motifvar::RunConfig;

// Values as typed on the command line; applied over the manifest (or the
// defaults) only when the flag was actually given.
struct Flags {
  std::string manifest, input, scenario, holidays, out_dir, timezone;
  std::string peak_start, peak_end, season, day_type, features, algorithms, init;
  int min_days = 0, max_gap_minutes = 0, alphabet = 0, motif_len = 0, k = 0, rf_trees = 0, threads = 0;
  int som_epochs = 0;
  double noise_floor = 0.0, fuzzifier = 0.0, max_reject_fraction = 0.0;
  std::uint64_t seed = 0;
  bool include_final_window = false, mia_raw = false;
};

void add_flags(CLI::App& app, Flags& f) {
  app.add_option("--manifest", f.manifest, "Load every setting from a manifest.json; other flags override it");
  app.add_option("--input", f.input, "Readings CSV: household_id,timestamp,watts (.gz accepted)");
  app.add_option("--scenario", f.scenario, "Synthetic scenario file, used when --input is absent");
  app.add_option("--holidays", f.holidays, "Holiday dates, one ISO date per line");
  app.add_option("--out-dir", f.out_dir, "Directory for all artifacts");
  app.add_option("--threads", f.threads, "Worker threads within a stage")->check(CLI::PositiveNumber);
  app.add_option("--timezone", f.timezone, "Local zone for day labels and the peak window");
  app.add_option("--peak-start", f.peak_start, "Peak window start, HH:MM");
  app.add_option("--peak-end", f.peak_end, "Peak window end, HH:MM");
  app.add_option("--season", f.season, "spring|summer|autumn|winter|any");
  app.add_option("--day-type", f.day_type, "working|weekend|holiday|any");
  app.add_option("--min-days", f.min_days, "Minimum valid peak days per household");
  app.add_option("--max-gap-minutes", f.max_gap_minutes, "Longest interval between readings bridged");
  app.add_option("--max-reject-fraction", f.max_reject_fraction, "Share of malformed rows tolerated");
  app.add_option("--alphabet", f.alphabet, "SAX alphabet size");
  app.add_option("--motif-len", f.motif_len, "Motif length in 5-minute deltas");
  app.add_option("--noise-floor-watts", f.noise_floor, "Windows whose delta range is below this are skipped");
  app.add_flag("--include-final-window", f.include_final_window, "Also symbolize the last window of the day");
  app.add_option("--features", f.features, "motif|profile|nonmotif");
  app.add_option("--k", f.k, "Number of clusters");
  app.add_option("--algorithms", f.algorithms, "Comma list from kmeans,fuzzy,som,hier,rfpam");
  app.add_option("--seed", f.seed, "Seed shared by every stochastic step");
  app.add_option("--fuzzifier", f.fuzzifier, "Fuzzy c-means exponent m");
  app.add_option("--rf-trees", f.rf_trees, "Trees in the random forest");
  app.add_option("--init", f.init, "k-means initialization: random|kmeanspp");
  app.add_option("--som-epochs", f.som_epochs, "SOM training epochs");
  app.add_flag("--mia-raw", f.mia_raw, "Report MIA without the per-cluster 1/size factor");
}

int clock_or_throw(const std::string& text, const char* flag) {
  const auto m = motifvar::parse_clock(text);
  if (!m) throw motifvar::config_error(std::string(flag) + " expects HH:MM");
  return *m;
}

RunConfig resolve(const CLI::App& app, const Flags& f) {
  RunConfig c = f.manifest.empty() ? RunConfig{} : motifvar::read_manifest(f.manifest);
  const auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("--input")) c.input = f.input;
  if (given("--scenario")) c.scenario = f.scenario;
  if (given("--holidays")) c.holidays = f.holidays;
  if (given("--out-dir")) c.out_dir = f.out_dir;
  if (given("--threads")) c.threads = f.threads;
  if (given("--timezone")) c.timezone = f.timezone;
  if (given("--peak-start")) c.peak_start_minutes = clock_or_throw(f.peak_start, "--peak-start");
  if (given("--peak-end")) c.peak_end_minutes = clock_or_throw(f.peak_end, "--peak-end");
  if (given("--season")) c.season = f.season;
  if (given("--day-type")) c.day_type = f.day_type;
  if (given("--min-days")) c.min_days = f.min_days;
  if (given("--max-gap-minutes")) c.max_gap_minutes = f.max_gap_minutes;
  if (given("--max-reject-fraction")) c.max_reject_fraction = f.max_reject_fraction;
  if (given("--alphabet")) c.sax.alphabet_size = f.alphabet;
  if (given("--motif-len")) c.sax.motif_len = f.motif_len;
  if (given("--noise-floor-watts")) c.sax.noise_floor_watts = f.noise_floor;
  if (given("--include-final-window")) c.sax.include_final_window = f.include_final_window;
  if (given("--features")) {
    const auto mode = motifvar::parse_feature_mode(f.features);
    if (!mode) throw motifvar::config_error("--features expects motif, profile or nonmotif");
    c.features = *mode;
  }
  if (given("--k")) c.k = f.k;
  if (given("--algorithms")) {
    c.algorithms.clear();
    std::string item;
    for (char ch : f.algorithms + ",") {
      if (ch != ',') {
        item += ch;
      } else if (!item.empty()) {
        c.algorithms.push_back(item);
        item.clear();
      }
    }
  }
  if (given("--seed")) c.seed = f.seed;
  if (given("--fuzzifier")) c.fuzzifier = f.fuzzifier;
  if (given("--rf-trees")) c.rf_trees = f.rf_trees;
  if (given("--init")) c.init = f.init;
  if (given("--som-epochs")) c.som_epochs = f.som_epochs;
  if (given("--mia-raw")) c.mia_raw = f.mia_raw;
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Household variability from recurring consumption motifs"};
  app.require_subcommand(1);

  struct Stage {
    const char* name;
    const char* help;
    void (*run)(const RunConfig&);
  };
  const Stage stages[] = {
      {"synth", "Generate synthetic readings and ground truth from a scenario", motifvar::stage_synth},
      {"ingest", "Align readings and extract peak-period windows", motifvar::stage_ingest},
      {"features", "Build the feature matrix from windows", motifvar::stage_features},
      {"cluster", "Partition households with each algorithm", motifvar::stage_cluster},
      {"report", "Validity indexes, tables and plots", motifvar::stage_report},
      {"run", "All stages end to end, then write the manifest", motifvar::run_pipeline},
  };
  Flags flags;
  std::vector<std::pair<CLI::App*, const Stage*>> commands;
  for (const auto& s : stages) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_flags(*sub, flags);
    commands.emplace_back(sub, &s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    for (const auto& [sub, stage] : commands) {
      if (!sub->parsed()) continue;
      stage->run(resolve(*sub, flags));
    }
  } catch (const motifvar::Error& e) {
    std::cerr << "error[" << e.category() << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
