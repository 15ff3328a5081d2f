#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "motifvar/ingest.hpp"

namespace motifvar {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// A behavioural group of synthetic households.
///
/// Each household draws events_per_day_max anchor clock times from
/// anchor_window and one height per anchor from event_height. On each day it
/// runs a random subset of events_per_day_min..max anchors; an event starts at
/// its anchor plus Gaussian jitter (timing_jitter_sd, redrawn until the event
/// fits inside the peak period) and lasts a duration drawn from
/// event_duration.
struct ArchetypeSpec {
  std::string name;
  int households = 0;
  int days = 60;
  double base_load = 150.0;
  int events_per_day_min = 1;
  int events_per_day_max = 1;
  Range event_height{800.0, 1500.0};
  Range event_duration{45.0, 90.0};    // minutes
  double timing_jitter_sd = 0.0;       // minutes
  Range anchor_window{16.75 * 60, 18.0 * 60};  // minutes after midnight
};

struct Scenario {
  std::uint64_t seed = 1;
  Date start_date{std::chrono::year{2011}, std::chrono::month{3}, std::chrono::day{1}};
  bool weekdays_only = true;
  TimeZone zone = TimeZone::europe_london();
  int simulate_start_minutes = 15 * 60;
  int simulate_end_minutes = 21 * 60;
  int peak_start_minutes = 16 * 60;
  int peak_end_minutes = 20 * 60;
  /// Multiplicative noise, uniform in [-noise, +noise].
  double noise = 0.02;
  /// Offset every household's reading clock by a random whole number of
  /// seconds in [0, 300) so readings do not land on the grid.
  bool random_phase = false;
  std::vector<ArchetypeSpec> archetypes;

  /// Throws config-error on inconsistent values.
  void validate() const;
};

struct HouseholdTruth {
  std::string household_id;
  std::string archetype;
  /// Realised start minute (after midnight) of each event, per anchor.
  std::vector<std::vector<double>> event_starts;
};

struct SynthOutput {
  std::vector<RawReading> readings;
  std::vector<HouseholdTruth> truth;
};

/// Deterministic given scenario.seed regardless of thread count; household i
/// uses sub-seed mix(seed, i).
SynthOutput generate(const Scenario& scenario, int threads = 1);

/// INI-like scenario text: global `key = value` lines, then one
/// `[archetype NAME]` section per archetype. See scenarios/ for examples.
Scenario parse_scenario(std::istream& in);
Scenario read_scenario_file(const std::filesystem::path& path);
std::string format_scenario(const Scenario& scenario);

/// household_id,archetype
void write_truth_csv(std::ostream& out, const std::vector<HouseholdTruth>& truth);

}  // namespace motifvar
