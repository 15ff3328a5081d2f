#include "motifvar/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "motifvar/error.hpp"
#include "motifvar/io.hpp"
#include "motifvar/parallel.hpp"
#include "motifvar/rng.hpp"

namespace motifvar {

void Scenario::validate() const {
  if (archetypes.empty()) throw config_error("scenario has no archetypes");
  if (simulate_start_minutes >= simulate_end_minutes) throw config_error("simulate window is empty");
  if (peak_start_minutes >= peak_end_minutes) throw config_error("peak window is empty");
  if (noise < 0.0 || noise >= 1.0) throw config_error("noise must be in [0, 1)");
  for (const auto& a : archetypes) {
    const std::string where = "archetype '" + a.name + "': ";
    if (a.households < 0 || a.days < 0) throw config_error(where + "negative count");
    if (a.events_per_day_min < 0 || a.events_per_day_max < a.events_per_day_min)
      throw config_error(where + "bad events_per_day range");
    if (a.timing_jitter_sd < 0.0) throw config_error(where + "negative jitter");
    if (a.event_height.lo > a.event_height.hi || a.event_duration.lo > a.event_duration.hi ||
        a.anchor_window.lo > a.anchor_window.hi)
      throw config_error(where + "range with lo > hi");
    if (a.event_duration.lo <= 0.0) throw config_error(where + "event duration must be positive");
    if (a.event_duration.hi > peak_end_minutes - peak_start_minutes)
      throw config_error(where + "events longer than the peak period");
  }
}

namespace {

struct Event {
  double start = 0.0;  // minutes after midnight
  double end = 0.0;
  double height = 0.0;
};

std::vector<Date> simulated_days(const Scenario& s, int count) {
  std::vector<Date> days;
  auto d = days_since_epoch(s.start_date);
  while (static_cast<int>(days.size()) < count) {
    const Date date = date_from_days(d++);
    const std::chrono::weekday wd{std::chrono::sys_days{date}};
    if (s.weekdays_only && (wd == std::chrono::Saturday || wd == std::chrono::Sunday)) continue;
    days.push_back(date);
  }
  return days;
}

double draw_start(Rng& rng, double anchor, double sd, double duration, const Scenario& s) {
  const double lo = s.peak_start_minutes;
  const double hi = s.peak_end_minutes - duration;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double t = sd > 0.0 ? rng.normal(anchor, sd) : anchor;
    if (t >= lo && t <= hi) return t;
  }
  return std::clamp(anchor, lo, hi);
}

struct HouseholdJob {
  const ArchetypeSpec* arch = nullptr;
  std::size_t index = 0;
};

void simulate_household(const Scenario& scenario, const HouseholdJob& job, const std::vector<Date>& days,
                        std::vector<RawReading>& readings, HouseholdTruth& truth) {
  const auto& arch = *job.arch;
  Rng rng(mix_seed(scenario.seed, job.index));
  char id[16];
  std::snprintf(id, sizeof id, "h%04zu", job.index + 1);
  truth = {id, arch.name, {}};

  const int phase = scenario.random_phase ? static_cast<int>(rng.below(300)) : 0;
  const auto anchors_n = static_cast<std::size_t>(arch.events_per_day_max);
  std::vector<double> anchors(anchors_n), heights(anchors_n);
  for (auto& a : anchors) a = rng.uniform(arch.anchor_window.lo, arch.anchor_window.hi);
  std::sort(anchors.begin(), anchors.end());
  for (auto& v : heights) v = rng.uniform(arch.event_height.lo, arch.event_height.hi);
  truth.event_starts.resize(anchors_n);

  std::vector<std::size_t> order(anchors_n);
  for (const auto& date : days) {
    const int count = rng.between(arch.events_per_day_min, arch.events_per_day_max);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<Event> events;
    for (int e = 0; e < count; ++e) {
      const std::size_t a = order[static_cast<std::size_t>(e)];
      const double duration = rng.uniform(arch.event_duration.lo, arch.event_duration.hi);
      const double start = draw_start(rng, anchors[a], arch.timing_jitter_sd, duration, scenario);
      events.push_back({start, start + duration, heights[a]});
      truth.event_starts[a].push_back(start);
    }

    const EpochSeconds midnight = days_since_epoch(date) * kSecondsPerDay;
    for (EpochSeconds t = scenario.simulate_start_minutes * 60 + phase; t <= scenario.simulate_end_minutes * 60;
         t += kSlotSeconds) {
      const double minute = static_cast<double>(t) / 60.0;
      double watts = arch.base_load;
      for (const auto& ev : events)
        if (minute >= ev.start && minute < ev.end) watts += ev.height;
      watts *= 1.0 + scenario.noise * rng.uniform(-1.0, 1.0);
      // Rounded to 0.1 W, as a monitor would report.
      watts = std::max(0.0, std::round(watts * 10.0) / 10.0);
      readings.push_back({truth.household_id, scenario.zone.to_utc(midnight + t), watts});
    }
  }
}

}  // namespace

SynthOutput generate(const Scenario& scenario, int threads) {
  scenario.validate();
  std::vector<HouseholdJob> jobs;
  std::map<const ArchetypeSpec*, std::vector<Date>> days;
  for (const auto& arch : scenario.archetypes) {
    days[&arch] = simulated_days(scenario, arch.days);
    for (int h = 0; h < arch.households; ++h) jobs.push_back({&arch, jobs.size()});
  }
  std::vector<std::vector<RawReading>> readings(jobs.size());
  SynthOutput out;
  out.truth.resize(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    simulate_household(scenario, jobs[i], days.at(jobs[i].arch), readings[i], out.truth[i]);
  });
  for (auto& r : readings) out.readings.insert(out.readings.end(), std::make_move_iterator(r.begin()),
                                               std::make_move_iterator(r.end()));
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

double number(const std::string& s, const std::string& key) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw config_error("scenario: bad number for " + key);
  return v;
}

double minutes_or_number(const std::string& s, const std::string& key) {
  if (const auto clock = parse_clock(s)) return *clock;
  return number(s, key);
}

Range range_value(const std::vector<std::string>& w, const std::string& key, bool clock) {
  if (w.size() != 2 && w.size() != 1) throw config_error("scenario: " + key + " expects 1 or 2 values");
  const auto conv = [&](const std::string& s) { return clock ? minutes_or_number(s, key) : number(s, key); };
  const double lo = conv(w[0]);
  return {lo, w.size() == 2 ? conv(w[1]) : lo};
}

bool boolean(const std::string& s, const std::string& key) {
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw config_error("scenario: bad boolean for " + key);
}

std::string range_text(Range r, bool clock) {
  if (clock && r.lo == std::floor(r.lo) && r.hi == std::floor(r.hi))
    return format_clock(static_cast<int>(r.lo)) + " " + format_clock(static_cast<int>(r.hi));
  return format_number(r.lo) + " " + format_number(r.hi);
}

}  // namespace

Scenario parse_scenario(std::istream& in) {
  Scenario s;
  ArchetypeSpec* current = nullptr;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const std::string where = "scenario line " + std::to_string(line_no) + ": ";
    if (view.front() == '[') {
      if (view.back() != ']') throw config_error(where + "unterminated section");
      const auto w = words(view.substr(1, view.size() - 2));
      if (w.size() != 2 || w[0] != "archetype") throw config_error(where + "expected [archetype NAME]");
      s.archetypes.push_back({});
      current = &s.archetypes.back();
      current->name = w[1];
      continue;
    }
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) throw config_error(where + "expected key = value");
    const std::string key(trim(view.substr(0, eq)));
    const auto w = words(view.substr(eq + 1));
    if (w.empty()) throw config_error(where + "missing value");

    if (!current) {
      if (key == "seed") {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(w[0].data(), w[0].data() + w[0].size(), v);
        if (ec != std::errc{} || ptr != w[0].data() + w[0].size()) throw config_error(where + "bad seed");
        s.seed = v;
      } else if (key == "start_date") {
        const auto d = parse_date(w[0]);
        if (!d) throw config_error(where + "bad date");
        s.start_date = *d;
      } else if (key == "weekdays_only") {
        s.weekdays_only = boolean(w[0], key);
      } else if (key == "timezone") {
        const auto z = TimeZone::from_name(w[0]);
        if (!z) throw config_error(where + "unknown time zone " + w[0]);
        s.zone = *z;
      } else if (key == "simulate") {
        const auto r = range_value(w, key, true);
        s.simulate_start_minutes = static_cast<int>(r.lo);
        s.simulate_end_minutes = static_cast<int>(r.hi);
      } else if (key == "peak") {
        const auto r = range_value(w, key, true);
        s.peak_start_minutes = static_cast<int>(r.lo);
        s.peak_end_minutes = static_cast<int>(r.hi);
      } else if (key == "noise") {
        s.noise = number(w[0], key);
      } else if (key == "random_phase") {
        s.random_phase = boolean(w[0], key);
      } else {
        throw config_error(where + "unknown key " + key);
      }
      continue;
    }
    auto& a = *current;
    if (key == "households") {
      a.households = static_cast<int>(number(w[0], key));
    } else if (key == "days") {
      a.days = static_cast<int>(number(w[0], key));
    } else if (key == "base_load") {
      a.base_load = number(w[0], key);
    } else if (key == "events_per_day") {
      const auto r = range_value(w, key, false);
      a.events_per_day_min = static_cast<int>(r.lo);
      a.events_per_day_max = static_cast<int>(r.hi);
    } else if (key == "event_height") {
      a.event_height = range_value(w, key, false);
    } else if (key == "event_duration") {
      a.event_duration = range_value(w, key, false);
    } else if (key == "timing_jitter_sd") {
      a.timing_jitter_sd = number(w[0], key);
    } else if (key == "anchor_window") {
      a.anchor_window = range_value(w, key, true);
    } else {
      throw config_error(where + "unknown archetype key " + key);
    }
  }
  s.validate();
  return s;
}

Scenario read_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("input-not-found", "cannot open scenario " + path.string());
  return parse_scenario(in);
}

std::string format_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "seed = " << s.seed << '\n'
      << "start_date = " << format_date(s.start_date) << '\n'
      << "weekdays_only = " << (s.weekdays_only ? "true" : "false") << '\n'
      << "timezone = " << s.zone.name() << '\n'
      << "simulate = " << format_clock(s.simulate_start_minutes) << ' ' << format_clock(s.simulate_end_minutes) << '\n'
      << "peak = " << format_clock(s.peak_start_minutes) << ' ' << format_clock(s.peak_end_minutes) << '\n'
      << "noise = " << format_number(s.noise) << '\n'
      << "random_phase = " << (s.random_phase ? "true" : "false") << '\n';
  for (const auto& a : s.archetypes) {
    out << "\n[archetype " << a.name << "]\n"
        << "households = " << a.households << '\n'
        << "days = " << a.days << '\n'
        << "base_load = " << format_number(a.base_load) << '\n'
        << "events_per_day = " << a.events_per_day_min << ' ' << a.events_per_day_max << '\n'
        << "event_height = " << range_text(a.event_height, false) << '\n'
        << "event_duration = " << range_text(a.event_duration, false) << '\n'
        << "timing_jitter_sd = " << format_number(a.timing_jitter_sd) << '\n'
        << "anchor_window = " << range_text(a.anchor_window, true) << '\n';
  }
  return out.str();
}

void write_truth_csv(std::ostream& out, const std::vector<HouseholdTruth>& truth) {
  out << "household_id,archetype\n";
  for (const auto& t : truth) out << t.household_id << ',' << t.archetype << '\n';
}

}  // namespace motifvar
