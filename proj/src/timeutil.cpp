#include "motifvar/timeutil.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace motifvar {

namespace {

using namespace std::chrono;

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

// UTC instant at 01:00 on the last Sunday of the given month.
EpochSeconds last_sunday_0100(int y, unsigned m) {
  const year_month_weekday_last ymwl{year{y}, month{m}, weekday_last{Sunday}};
  return static_cast<EpochSeconds>(sys_days{ymwl}.time_since_epoch().count()) * kSecondsPerDay + 3600;
}

}  // namespace

std::int64_t days_since_epoch(const Date& d) { return sys_days{d}.time_since_epoch().count(); }

Date date_from_days(std::int64_t days) { return Date{sys_days{std::chrono::days{days}}}; }

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
      !parse_int(text.substr(8, 2), d))
    return std::nullopt;
  const Date date{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::optional<int> parse_clock(std::string_view text) {
  if (text.size() != 5 || text[2] != ':') return std::nullopt;
  int h = 0, m = 0;
  if (!parse_int(text.substr(0, 2), h) || !parse_int(text.substr(3, 2), m)) return std::nullopt;
  if (h > 24 || m > 59 || (h == 24 && m != 0)) return std::nullopt;
  return h * 60 + m;
}

std::string format_clock(int minutes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%02d:%02d", minutes / 60, minutes % 60);
  return buf;
}

TimeZone TimeZone::utc() { return TimeZone("UTC", 0, false); }
TimeZone TimeZone::europe_london() { return TimeZone("Europe/London", 0, true); }

TimeZone TimeZone::fixed(int offset_minutes) {
  const int a = offset_minutes < 0 ? -offset_minutes : offset_minutes;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%02d:%02d", offset_minutes < 0 ? '-' : '+', a / 60, a % 60);
  return TimeZone(buf, offset_minutes * 60, false);
}

std::optional<TimeZone> TimeZone::from_name(std::string_view name) {
  if (name == "UTC" || name == "GMT" || name == "Etc/UTC" || name == "Z") return utc();
  if (name == "Europe/London" || name == "Europe/Dublin" || name == "Europe/Lisbon")
    return TimeZone(std::string(name), 0, true);
  static constexpr std::array<std::string_view, 6> central = {
      "Europe/Paris", "Europe/Berlin", "Europe/Amsterdam", "Europe/Brussels", "Europe/Madrid", "Europe/Rome"};
  for (auto c : central)
    if (name == c) return TimeZone(std::string(name), 3600, true);
  if (name.size() == 6 && (name[0] == '+' || name[0] == '-') && name[3] == ':') {
    int h = 0, m = 0;
    if (parse_int(name.substr(1, 2), h) && parse_int(name.substr(4, 2), m) && h <= 14 && m < 60) {
      const int total = h * 60 + m;
      return fixed(name[0] == '-' ? -total : total);
    }
  }
  return std::nullopt;
}

int TimeZone::offset_at(EpochSeconds utc) const {
  if (!eu_summer_time_) return standard_offset_;
  const auto days = floor_div(utc, kSecondsPerDay);
  const int y = static_cast<int>(date_from_days(days).year());
  const EpochSeconds start = last_sunday_0100(y, 3);
  const EpochSeconds end = last_sunday_0100(y, 10);
  return (utc >= start && utc < end) ? standard_offset_ + 3600 : standard_offset_;
}

EpochSeconds TimeZone::to_utc(EpochSeconds local) const {
  if (!eu_summer_time_) return local - standard_offset_;
  const EpochSeconds as_summer = local - (standard_offset_ + 3600);
  if (offset_at(as_summer) == standard_offset_ + 3600) return as_summer;
  return local - standard_offset_;
}

std::optional<EpochSeconds> parse_timestamp(std::string_view text, const TimeZone& zone) {
  if (text.size() < 19) return std::nullopt;
  const auto date = parse_date(text.substr(0, 10));
  if (!date) return std::nullopt;
  if (text[10] != 'T' && text[10] != ' ') return std::nullopt;
  if (text[13] != ':' || text[16] != ':') return std::nullopt;
  int h = 0, mi = 0, s = 0;
  if (!parse_int(text.substr(11, 2), h) || !parse_int(text.substr(14, 2), mi) ||
      !parse_int(text.substr(17, 2), s))
    return std::nullopt;
  if (h > 23 || mi > 59 || s > 59) return std::nullopt;

  std::string_view rest = text.substr(19);
  if (!rest.empty() && rest.front() == '.') {
    std::size_t i = 1;
    while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9') ++i;
    if (i == 1) return std::nullopt;
    rest.remove_prefix(i);
  }

  const EpochSeconds wall = days_since_epoch(*date) * kSecondsPerDay + h * 3600 + mi * 60 + s;
  if (rest.empty()) return zone.to_utc(wall);
  if (rest == "Z") return wall;
  if (rest.front() != '+' && rest.front() != '-') return std::nullopt;
  const int sign = rest.front() == '-' ? -1 : 1;
  rest.remove_prefix(1);
  int oh = 0, om = 0;
  if (rest.size() == 5 && rest[2] == ':') {
    if (!parse_int(rest.substr(0, 2), oh) || !parse_int(rest.substr(3, 2), om)) return std::nullopt;
  } else if (rest.size() == 4) {
    if (!parse_int(rest.substr(0, 2), oh) || !parse_int(rest.substr(2, 2), om)) return std::nullopt;
  } else if (rest.size() == 2) {
    if (!parse_int(rest, oh)) return std::nullopt;
  } else {
    return std::nullopt;
  }
  if (oh > 14 || om > 59) return std::nullopt;
  return wall - sign * (oh * 3600 + om * 60);
}

std::string format_utc(EpochSeconds t) {
  const auto days = floor_div(t, kSecondsPerDay);
  const auto secs = t - days * kSecondsPerDay;
  const Date d = date_from_days(days);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", format_date(d).c_str(), static_cast<int>(secs / 3600),
                static_cast<int>((secs / 60) % 60), static_cast<int>(secs % 60));
  return buf;
}

}  // namespace motifvar
