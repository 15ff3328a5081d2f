#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "motifvar/timeutil.hpp"

namespace motifvar {

inline constexpr std::int64_t kSlotSeconds = 300;
inline constexpr int kSlotMinutes = 5;

struct RawReading {
  std::string household_id;
  EpochSeconds timestamp = 0;  // UTC
  double watts = 0.0;

  friend bool operator==(const RawReading&, const RawReading&) = default;
};

struct RejectedRow {
  std::size_t line = 0;
  std::string reason;
  std::string text;
};

struct ParseReport {
  std::vector<RawReading> readings;
  std::vector<RejectedRow> rejects;
  std::size_t rows = 0;  // data rows seen, excluding header and blank lines
};

enum class HeaderMode { automatic, present, absent };

struct ParseOptions {
  HeaderMode header = HeaderMode::automatic;
  double max_reject_fraction = 0.10;
  TimeZone zone = TimeZone::europe_london();
};

/// Reads `household_id,timestamp_iso8601,watts` rows. Malformed rows are
/// collected in the report; throws Error("too-many-rejects") when the reject
/// share exceeds options.max_reject_fraction.
ParseReport parse_readings(std::istream& in, const ParseOptions& options = {});

/// As parse_readings, from a file. Paths ending in ".gz" are decompressed.
/// Throws Error("input-not-found") if the file cannot be opened.
ParseReport read_readings_file(const std::filesystem::path& path, const ParseOptions& options = {});

/// Groups by household, sorts by time and drops repeated timestamps (the
/// first row in input order wins).
std::map<std::string, std::vector<RawReading>> group_by_household(std::span<const RawReading> readings);

/// One household on an exact 5-minute UTC grid. Europe/London and every other
/// supported zone have offsets that are whole multiples of 5 minutes, so the
/// grid is also aligned in local time.
struct AlignedSeries {
  std::string household_id;
  EpochSeconds grid_start = 0;
  std::vector<double> values;
  std::vector<std::size_t> gaps;  // sorted slot indices

  EpochSeconds slot_time(std::size_t slot) const { return grid_start + static_cast<std::int64_t>(slot) * kSlotSeconds; }
  bool is_gap(std::size_t slot) const;
  std::size_t size() const { return values.size(); }
};

struct AlignOptions {
  int max_gap_minutes = 15;
  /// How long the final reading is assumed to hold (one monitor cadence).
  int tail_hold_seconds = 300;
};

/// Resamples readings onto the grid under a piecewise-constant power model:
/// each reading holds until the next one, and a slot's value is the mean
/// power over the covered part of its 5-minute cell. Energy over fully
/// covered cells is therefore conserved.
///
/// A slot is a gap when its cell has no coverage or when its start time lies
/// strictly inside an interval between readings longer than max_gap_minutes.
///
/// Throws Error("insufficient-readings") for fewer than two readings.
AlignedSeries align_to_grid(std::span<const RawReading> readings, const AlignOptions& options = {});

struct DroppedHousehold {
  std::string household_id;
  std::string reason;
};

struct AlignmentBatch {
  std::vector<AlignedSeries> series;  // ordered by household id
  std::vector<DroppedHousehold> dropped;
};

AlignmentBatch align_households(const std::map<std::string, std::vector<RawReading>>& grouped,
                                const AlignOptions& options = {}, int threads = 1);

enum class DayType { working, weekend, holiday };
enum class Season { spring, summer, autumn, winter };

std::string to_string(DayType t);
std::string to_string(Season s);
std::optional<DayType> parse_day_type(std::string_view text);
std::optional<Season> parse_season(std::string_view text);

struct DayLabel {
  Date date;
  DayType day_type = DayType::working;
  Season season = Season::winter;

  friend bool operator==(const DayLabel&, const DayLabel&) = default;
};

Season season_of(const Date& d);

std::map<Date, DayLabel> label_days(const std::set<Date>& dates, const std::set<Date>& holidays);

/// One ISO date per line; '#' starts a comment. Throws config-error on a bad line.
std::set<Date> read_holidays(std::istream& in);
std::set<Date> read_holidays_file(const std::filesystem::path& path);

/// Local calendar dates touched by the series.
std::set<Date> local_dates(const AlignedSeries& series, const TimeZone& zone);

struct PeakFilter {
  std::optional<Season> season = Season::spring;
  std::optional<DayType> day_type = DayType::working;
  int peak_start_minutes = 16 * 60;
  int peak_end_minutes = 20 * 60;

  /// Readings per window, both ends inclusive (49 for 16:00-20:00).
  std::size_t window_length() const {
    return static_cast<std::size_t>((peak_end_minutes - peak_start_minutes) / kSlotMinutes + 1);
  }
};

struct PeakDayWindow {
  std::string household_id;
  Date date;
  std::vector<double> readings;
  bool valid = false;
};

/// One window per matching local date. Windows touching a gap or running
/// off the series are emitted with valid = false.
std::vector<PeakDayWindow> extract_peak_windows(const AlignedSeries& series,
                                                const std::map<Date, DayLabel>& labels,
                                                const PeakFilter& filter, const TimeZone& zone);

/// Households with at least min_days valid windows.
std::set<std::string> filter_households(const std::map<std::string, std::vector<PeakDayWindow>>& windows,
                                        int min_days = 4);

}  // namespace motifvar
