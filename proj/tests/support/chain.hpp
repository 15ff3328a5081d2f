#pragma once

// In-memory ingest chain for tests: readings to retained peak-day windows.

#include <span>

#include "motifvar/features.hpp"
#include "motifvar/ingest.hpp"

namespace testing_chain {

inline motifvar::WindowsByHousehold retained_windows(std::span<const motifvar::RawReading> readings,
                                                     const motifvar::PeakFilter& filter = {}, int min_days = 4) {
  using namespace motifvar;
  const auto zone = TimeZone::europe_london();
  const auto batch = align_households(group_by_household(readings));
  WindowsByHousehold windows;
  for (const auto& series : batch.series)
    windows[series.household_id] = extract_peak_windows(series, label_days(local_dates(series, zone), {}), filter, zone);
  const auto kept = filter_households(windows, min_days);
  std::erase_if(windows, [&](const auto& entry) { return !kept.count(entry.first); });
  return windows;
}

}  // namespace testing_chain
