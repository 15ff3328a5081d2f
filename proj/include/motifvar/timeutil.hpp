#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace motifvar {

using Date = std::chrono::year_month_day;

/// Seconds since 1970-01-01T00:00:00Z.
using EpochSeconds = std::int64_t;

inline constexpr std::int64_t kSecondsPerDay = 86400;

std::int64_t days_since_epoch(const Date& d);
Date date_from_days(std::int64_t days);

std::string format_date(const Date& d);
std::optional<Date> parse_date(std::string_view text);

/// "HH:MM" -> minutes after midnight.
std::optional<int> parse_clock(std::string_view text);
std::string format_clock(int minutes);

/// A civil time zone: a standard UTC offset, optionally with the EU summer
/// time rule (+1h from the last Sunday of March 01:00 UTC to the last Sunday
/// of October 01:00 UTC).
class TimeZone {
 public:
  static TimeZone utc();
  static TimeZone europe_london();
  static TimeZone fixed(int offset_minutes);

  /// Accepts "UTC", "GMT", "Etc/UTC", "Europe/London", "Europe/Dublin",
  /// "Europe/Lisbon", "Europe/Paris", "Europe/Berlin", "Europe/Amsterdam",
  /// "Europe/Brussels", "Europe/Madrid", "Europe/Rome" and fixed offsets
  /// written "+HH:MM" / "-HH:MM".
  static std::optional<TimeZone> from_name(std::string_view name);

  const std::string& name() const { return name_; }

  int offset_at(EpochSeconds utc) const;
  EpochSeconds to_local(EpochSeconds utc) const { return utc + offset_at(utc); }

  /// Local wall-clock seconds -> UTC. In the repeated autumn hour the earlier
  /// instant wins; a wall time inside the spring gap maps forward.
  EpochSeconds to_utc(EpochSeconds local) const;

  friend bool operator==(const TimeZone&, const TimeZone&) = default;

 private:
  TimeZone(std::string name, int standard_offset, bool eu_summer_time)
      : name_(std::move(name)), standard_offset_(standard_offset), eu_summer_time_(eu_summer_time) {}

  std::string name_;
  int standard_offset_ = 0;
  bool eu_summer_time_ = false;
};

/// Parses "YYYY-MM-DD[T ]HH:MM:SS[.fff][Z|+HH:MM|-HH:MM|+HHMM]".
/// Without a zone designator the wall time is read in `zone`.
/// Fractional seconds are truncated.
std::optional<EpochSeconds> parse_timestamp(std::string_view text, const TimeZone& zone);

/// "YYYY-MM-DDTHH:MM:SSZ".
std::string format_utc(EpochSeconds t);

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace motifvar
