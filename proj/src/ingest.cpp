#include "motifvar/ingest.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "motifvar/error.hpp"
#include "motifvar/parallel.hpp"

namespace motifvar {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

struct Fields {
  std::string_view id, timestamp, watts;
  std::size_t count = 0;
};

Fields split_row(std::string_view line) {
  Fields f;
  std::string_view parts[3];
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const auto piece = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (f.count < 3) parts[f.count] = trim(piece);
    ++f.count;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  f.id = parts[0];
  f.timestamp = parts[1];
  f.watts = parts[2];
  return f;
}

std::string read_gzip(const std::filesystem::path& path) {
  gzFile file = gzopen(path.c_str(), "rb");
  if (!file) throw Error("input-not-found", "cannot open " + path.string());
  std::string out;
  char buf[1 << 16];
  int n = 0;
  while ((n = gzread(file, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(n));
  const bool failed = n < 0;
  gzclose(file);
  if (failed) throw Error("parse-error", "corrupt gzip stream in " + path.string());
  return out;
}

}  // namespace

ParseReport parse_readings(std::istream& in, const ParseOptions& options) {
  ParseReport report;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const Fields f = split_row(view);
    if (first_content) {
      first_content = false;
      const bool header = options.header == HeaderMode::present ||
                          (options.header == HeaderMode::automatic && f.count >= 3 && !parse_number(f.watts));
      if (header) continue;
    }
    ++report.rows;
    auto reject = [&](std::string reason) {
      report.rejects.push_back({line_no, std::move(reason), std::string(view)});
    };
    if (f.count != 3) {
      reject("expected 3 fields, found " + std::to_string(f.count));
      continue;
    }
    if (f.id.empty()) {
      reject("empty household id");
      continue;
    }
    const auto ts = parse_timestamp(f.timestamp, options.zone);
    if (!ts) {
      reject("bad timestamp");
      continue;
    }
    const auto watts = parse_number(f.watts);
    if (!watts || !std::isfinite(*watts)) {
      reject("bad power value");
      continue;
    }
    if (*watts < 0.0) {
      reject("negative power");
      continue;
    }
    report.readings.push_back({std::string(f.id), *ts, *watts});
  }
  if (report.rows > 0 &&
      static_cast<double>(report.rejects.size()) > options.max_reject_fraction * static_cast<double>(report.rows)) {
    std::ostringstream msg;
    msg << report.rejects.size() << " of " << report.rows << " rows rejected (first at line "
        << report.rejects.front().line << ": " << report.rejects.front().reason << ")";
    throw Error("too-many-rejects", msg.str());
  }
  return report;
}

ParseReport read_readings_file(const std::filesystem::path& path, const ParseOptions& options) {
  if (!std::filesystem::exists(path)) throw Error("input-not-found", "no such file: " + path.string());
  if (path.extension() == ".gz") {
    std::istringstream in(read_gzip(path));
    return parse_readings(in, options);
  }
  std::ifstream in(path);
  if (!in) throw Error("input-not-found", "cannot open " + path.string());
  return parse_readings(in, options);
}

std::map<std::string, std::vector<RawReading>> group_by_household(std::span<const RawReading> readings) {
  std::map<std::string, std::vector<RawReading>> grouped;
  for (const auto& r : readings) grouped[r.household_id].push_back(r);
  for (auto& [id, rows] : grouped) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const RawReading& a, const RawReading& b) { return a.timestamp < b.timestamp; });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const RawReading& a, const RawReading& b) { return a.timestamp == b.timestamp; }),
               rows.end());
  }
  return grouped;
}

bool AlignedSeries::is_gap(std::size_t slot) const { return std::binary_search(gaps.begin(), gaps.end(), slot); }

AlignedSeries align_to_grid(std::span<const RawReading> readings, const AlignOptions& options) {
  if (readings.size() < 2) {
    throw Error("insufficient-readings", "need at least 2 readings, have " + std::to_string(readings.size()));
  }
  for (std::size_t i = 1; i < readings.size(); ++i) {
    if (readings[i].timestamp <= readings[i - 1].timestamp)
      throw Error("unsorted-readings", "readings must be strictly increasing in time");
  }
  const std::int64_t max_gap = std::int64_t{options.max_gap_minutes} * 60;
  const EpochSeconds first = readings.front().timestamp;
  const EpochSeconds coverage_end = readings.back().timestamp + options.tail_hold_seconds;

  AlignedSeries out;
  out.household_id = readings.front().household_id;
  out.grid_start = floor_div(first, kSlotSeconds) * kSlotSeconds;
  const EpochSeconds grid_end = -floor_div(-coverage_end, kSlotSeconds) * kSlotSeconds;
  const auto slots = static_cast<std::size_t>((grid_end - out.grid_start) / kSlotSeconds);

  std::vector<double> energy(slots, 0.0);
  std::vector<std::int64_t> covered(slots, 0);
  std::vector<int> pieces(slots, 0);
  std::vector<double> sole_power(slots, 0.0);
  std::vector<char> gap(slots, 0);

  for (std::size_t i = 0; i < readings.size(); ++i) {
    const EpochSeconds a = readings[i].timestamp;
    const EpochSeconds b = i + 1 < readings.size() ? readings[i + 1].timestamp : coverage_end;
    if (b <= a) continue;
    const double p = readings[i].watts;
    auto slot = static_cast<std::size_t>((a - out.grid_start) / kSlotSeconds);
    for (; slot < slots; ++slot) {
      const EpochSeconds cell_lo = out.slot_time(slot);
      const EpochSeconds cell_hi = cell_lo + kSlotSeconds;
      if (cell_lo >= b) break;
      const EpochSeconds overlap = std::min(b, cell_hi) - std::max(a, cell_lo);
      if (overlap <= 0) continue;
      energy[slot] += p * static_cast<double>(overlap);
      covered[slot] += overlap;
      if (pieces[slot]++ == 0) sole_power[slot] = p;
      // Unbridged interval: slot starts strictly inside it.
      if (i + 1 < readings.size() && b - a > max_gap && cell_lo > a && cell_lo < b) gap[slot] = 1;
    }
  }

  out.values.resize(slots, 0.0);
  for (std::size_t s = 0; s < slots; ++s) {
    if (covered[s] == 0) {
      gap[s] = 1;
      continue;
    }
    out.values[s] = pieces[s] == 1 ? sole_power[s] : energy[s] / static_cast<double>(covered[s]);
  }
  for (std::size_t s = 0; s < slots; ++s)
    if (gap[s]) out.gaps.push_back(s);
  return out;
}

AlignmentBatch align_households(const std::map<std::string, std::vector<RawReading>>& grouped,
                                const AlignOptions& options, int threads) {
  std::vector<const std::vector<RawReading>*> inputs;
  for (const auto& [id, rows] : grouped) inputs.push_back(&rows);
  std::vector<std::optional<AlignedSeries>> results(inputs.size());
  std::vector<std::string> reasons(inputs.size());
  parallel_for(inputs.size(), threads, [&](std::size_t i) {
    try {
      results[i] = align_to_grid(*inputs[i], options);
    } catch (const Error& e) {
      reasons[i] = e.category() + ": " + e.what();
    }
  });
  AlignmentBatch batch;
  std::size_t i = 0;
  for (const auto& [id, rows] : grouped) {
    if (results[i]) {
      batch.series.push_back(std::move(*results[i]));
    } else {
      batch.dropped.push_back({id, reasons[i]});
    }
    ++i;
  }
  return batch;
}

std::string to_string(DayType t) {
  switch (t) {
    case DayType::working: return "working";
    case DayType::weekend: return "weekend";
    case DayType::holiday: return "holiday";
  }
  return "?";
}

std::string to_string(Season s) {
  switch (s) {
    case Season::spring: return "spring";
    case Season::summer: return "summer";
    case Season::autumn: return "autumn";
    case Season::winter: return "winter";
  }
  return "?";
}

std::optional<DayType> parse_day_type(std::string_view text) {
  if (text == "working") return DayType::working;
  if (text == "weekend") return DayType::weekend;
  if (text == "holiday") return DayType::holiday;
  return std::nullopt;
}

std::optional<Season> parse_season(std::string_view text) {
  if (text == "spring") return Season::spring;
  if (text == "summer") return Season::summer;
  if (text == "autumn") return Season::autumn;
  if (text == "winter") return Season::winter;
  return std::nullopt;
}

Season season_of(const Date& d) {
  const unsigned m = static_cast<unsigned>(d.month());
  if (m >= 3 && m <= 5) return Season::spring;
  if (m >= 6 && m <= 8) return Season::summer;
  if (m >= 9 && m <= 11) return Season::autumn;
  return Season::winter;
}

std::map<Date, DayLabel> label_days(const std::set<Date>& dates, const std::set<Date>& holidays) {
  std::map<Date, DayLabel> labels;
  for (const auto& d : dates) {
    DayLabel label{d, DayType::working, season_of(d)};
    const std::chrono::weekday wd{std::chrono::sys_days{d}};
    if (holidays.contains(d)) {
      label.day_type = DayType::holiday;
    } else if (wd == std::chrono::Saturday || wd == std::chrono::Sunday) {
      label.day_type = DayType::weekend;
    }
    labels.emplace(d, label);
  }
  return labels;
}

std::set<Date> read_holidays(std::istream& in) {
  std::set<Date> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto d = parse_date(view);
    if (!d) throw config_error("holiday list line " + std::to_string(line_no) + ": not an ISO date");
    out.insert(*d);
  }
  return out;
}

std::set<Date> read_holidays_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("input-not-found", "cannot open holiday list " + path.string());
  return read_holidays(in);
}

std::set<Date> local_dates(const AlignedSeries& series, const TimeZone& zone) {
  std::set<Date> out;
  if (series.values.empty()) return out;
  const auto first = floor_div(zone.to_local(series.slot_time(0)), kSecondsPerDay);
  const auto last = floor_div(zone.to_local(series.slot_time(series.size() - 1)), kSecondsPerDay);
  for (auto d = first; d <= last; ++d) out.insert(date_from_days(d));
  return out;
}

std::vector<PeakDayWindow> extract_peak_windows(const AlignedSeries& series,
                                                const std::map<Date, DayLabel>& labels,
                                                const PeakFilter& filter, const TimeZone& zone) {
  if (filter.peak_start_minutes >= filter.peak_end_minutes)
    throw config_error("peak start must be before peak end");
  if (filter.peak_start_minutes % kSlotMinutes != 0 || filter.peak_end_minutes % kSlotMinutes != 0)
    throw config_error("peak bounds must lie on 5-minute boundaries");

  const std::size_t length = filter.window_length();
  std::vector<PeakDayWindow> out;
  for (const auto& date : local_dates(series, zone)) {
    const auto it = labels.find(date);
    if (it == labels.end()) continue;
    if (filter.season && it->second.season != *filter.season) continue;
    if (filter.day_type && it->second.day_type != *filter.day_type) continue;

    PeakDayWindow w{series.household_id, date, std::vector<double>(length, 0.0), true};
    const EpochSeconds local_start = days_since_epoch(date) * kSecondsPerDay + filter.peak_start_minutes * 60;
    const EpochSeconds utc_start = zone.to_utc(local_start);
    const std::int64_t offset = utc_start - series.grid_start;
    // Only possible for zones whose offset is not a multiple of 5 minutes.
    if (offset % kSlotSeconds != 0) w.valid = false;
    const std::int64_t first_slot = floor_div(offset, kSlotSeconds);
    for (std::size_t i = 0; i < length; ++i) {
      const std::int64_t slot = first_slot + static_cast<std::int64_t>(i);
      if (slot < 0 || slot >= static_cast<std::int64_t>(series.size())) {
        w.valid = false;
        continue;
      }
      const auto s = static_cast<std::size_t>(slot);
      w.readings[i] = series.values[s];
      if (series.is_gap(s)) w.valid = false;
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::set<std::string> filter_households(const std::map<std::string, std::vector<PeakDayWindow>>& windows,
                                        int min_days) {
  std::set<std::string> kept;
  for (const auto& [id, days] : windows) {
    const auto valid = std::count_if(days.begin(), days.end(), [](const PeakDayWindow& w) { return w.valid; });
    if (valid >= min_days) kept.insert(id);
  }
  return kept;
}

}  // namespace motifvar
