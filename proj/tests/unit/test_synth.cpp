#include <doctest.h>

#include <cmath>
#include <sstream>

#include "../support/chain.hpp"
#include "motifvar/error.hpp"
#include "motifvar/motif.hpp"
#include "motifvar/synth.hpp"

using namespace motifvar;

namespace {

Scenario one_archetype(double jitter, int households = 10, int days = 40) {
  Scenario s;
  s.seed = 99;
  ArchetypeSpec a;
  a.name = "a";
  a.households = households;
  a.days = days;
  a.timing_jitter_sd = jitter;
  a.anchor_window = {17 * 60, 18 * 60};
  s.archetypes.push_back(a);
  return s;
}

double population_sd(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m += v / static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size()));
}

std::vector<double> top_motif_sd(const SynthOutput& out) {
  const auto windows = testing_chain::retained_windows(out.readings);
  std::vector<double> f2;
  for (const auto& c : build_catalogs(windows, SaxParams{}, 1)) f2.push_back(motif_features(c).timing_sd[0]);
  return f2;
}

}  // namespace

TEST_CASE("zero jitter repeats the anchor every day") {
  const auto out = generate(one_archetype(0.0, 3, 10));
  REQUIRE(out.truth.size() == 3);
  for (const auto& t : out.truth) {
    CHECK(t.archetype == "a");
    REQUIRE(t.event_starts.size() == 1);
    REQUIRE(t.event_starts[0].size() == 10);
    for (double s : t.event_starts[0]) CHECK(s == t.event_starts[0].front());
  }
  CHECK(out.truth[0].household_id == "h0001");
  CHECK(out.truth[0].event_starts[0][0] != out.truth[1].event_starts[0][0]);
}

TEST_CASE("realised jitter matches the requested spread") {
  const auto out = generate(one_archetype(20.0, 30, 60));
  double pooled = 0.0;
  for (const auto& t : out.truth) pooled += population_sd(t.event_starts[0]) / static_cast<double>(out.truth.size());
  CHECK(pooled > 16.0);
  CHECK(pooled < 24.0);
}

TEST_CASE("base load alone produces no motifs") {
  auto s = one_archetype(0.0, 4, 20);
  s.archetypes[0].events_per_day_min = s.archetypes[0].events_per_day_max = 0;
  const auto out = generate(s);
  const auto windows = testing_chain::retained_windows(out.readings);
  CHECK(windows.size() == 4);
  for (const auto& c : build_catalogs(windows, SaxParams{}, 1)) CHECK(c.total_occurrences() == 0);
}

TEST_CASE("timing jitter shows up in the top motif's timing spread") {
  const auto low = top_motif_sd(generate(one_archetype(5.0, 15, 60)));
  const auto high = top_motif_sd(generate(one_archetype(60.0, 15, 60)));
  REQUIRE(low.size() == 15);
  REQUIRE(high.size() == 15);
  const auto mean = [](const std::vector<double>& x) {
    double m = 0.0;
    for (double v : x) m += v / static_cast<double>(x.size());
    return m;
  };
  const double pooled = std::sqrt((std::pow(population_sd(low), 2) + std::pow(population_sd(high), 2)) / 2.0);
  CHECK(mean(high) - mean(low) > 3.0 * pooled);
}

TEST_CASE("readings cover the simulated window on the grid") {
  const auto out = generate(one_archetype(10.0, 2, 5));
  // 15:00 to 21:00 every 5 minutes: 73 readings per day.
  CHECK(out.readings.size() == 2u * 5u * 73u);
  for (const auto& r : out.readings) {
    CHECK(r.timestamp % 300 == 0);
    CHECK(r.watts > 0.0);
  }
}

TEST_CASE("generation is independent of the thread count") {
  const auto s = one_archetype(30.0, 12, 20);
  const auto a = generate(s, 1);
  const auto b = generate(s, 4);
  REQUIRE(a.readings.size() == b.readings.size());
  for (std::size_t i = 0; i < a.readings.size(); ++i) {
    CHECK(a.readings[i].household_id == b.readings[i].household_id);
    CHECK(a.readings[i].timestamp == b.readings[i].timestamp);
    CHECK(a.readings[i].watts == b.readings[i].watts);
  }
  auto other = s;
  other.seed = 100;
  CHECK(generate(other).readings[100].watts != a.readings[100].watts);
}

TEST_CASE("scenario text round trip") {
  std::istringstream in(R"(# comment
seed = 5
start_date = 2011-04-04
weekdays_only = false
simulate = 15:30 20:30
peak = 16:00 20:00
noise = 0.05
random_phase = true

[archetype early]
households = 3
days = 7
base_load = 200
events_per_day = 1 2
event_height = 500 900
event_duration = 30 60
timing_jitter_sd = 12.5
anchor_window = 16:15 17:00
)");
  const auto s = parse_scenario(in);
  CHECK(s.seed == 5);
  CHECK_FALSE(s.weekdays_only);
  CHECK(s.random_phase);
  CHECK(s.simulate_start_minutes == 930);
  REQUIRE(s.archetypes.size() == 1);
  CHECK(s.archetypes[0].events_per_day_max == 2);
  CHECK(s.archetypes[0].timing_jitter_sd == 12.5);
  CHECK(s.archetypes[0].anchor_window.lo == 975.0);

  std::istringstream again(format_scenario(s));
  const auto t = parse_scenario(again);
  CHECK(format_scenario(t) == format_scenario(s));

  std::istringstream bad_key("seed = 1\nflavour = 3\n[archetype x]\nhouseholds = 1\n");
  CHECK_THROWS_AS(parse_scenario(bad_key), Error);
  std::istringstream no_arch("seed = 1\n");
  CHECK_THROWS_AS(parse_scenario(no_arch), Error);
  std::istringstream too_long("[archetype x]\nhouseholds = 1\nevent_duration = 30 300\n");
  CHECK_THROWS_AS(parse_scenario(too_long), Error);
}

TEST_CASE("truth csv") {
  std::ostringstream o;
  write_truth_csv(o, generate(one_archetype(0.0, 2, 4)).truth);
  CHECK(o.str() == "household_id,archetype\nh0001,a\nh0002,a\n");
}
