#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "motifvar/ingest.hpp"
#include "motifvar/sax.hpp"

namespace motifvar {

struct Occurrence {
  Date date;
  int start_clock = 0;  // minutes after peak start

  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

struct MotifCatalog {
  std::string household_id;
  std::map<MotifWord, std::vector<Occurrence>> entries;
  int days_sampled = 0;

  std::size_t total_occurrences() const;
};

/// Groups occurrences by word; each list is sorted by (date, start_clock).
MotifCatalog build_catalog(std::string household_id, std::span<const WindowOccurrence> occurrences,
                           int days_sampled);

/// True for words with every symbol equal except exactly one.
bool is_single_spike(const MotifWord& word);

/// Collapses single-spike families. A family is the run of words produced by
/// one isolated step sliding through the window (ccccca, ccccac, ...); only
/// the member with the spike in the last position survives.
MotifCatalog exclude_trivial(MotifCatalog catalog);

/// Population standard deviation; nullopt for an empty list.
std::optional<double> timing_sd(std::span<const double> minutes);

struct MotifFeatures {
  std::array<double, 3> occurrences{};  // top-1..3 motif counts
  std::array<double, 3> timing_sd{};    // minutes
  double repeated = 0.0;                // distinct motifs occurring >= 2 times
  double regular = 0.0;                 // distinct motifs present on >= 30% of days

  /// f1..f8 order: count1, sd1, count2, sd2, count3, sd3, repeated, regular.
  std::array<double, 8> row() const;
};

struct RankedMotif {
  MotifWord word;
  std::size_t count = 0;
};

/// Motifs by descending occurrence count, ties broken by word.
std::vector<RankedMotif> rank_motifs(const MotifCatalog& catalog);

/// Minimum distinct-day count for a motif to be "regular": ceil(0.3 * days).
int regular_day_threshold(int days_sampled);

MotifFeatures motif_features(const MotifCatalog& catalog);

/// Slot-wise mean of the first length-1 readings of each window (48 for the
/// 16:00-20:00 window). Throws config-error on an empty list.
std::vector<double> profile_features(std::span<const PeakDayWindow> windows);

struct NonMotifFeatures {
  double time_of_max_sd = 0.0;  // minutes
  double daily_total_sd = 0.0;  // watt x 5-minute units
};

/// Uses the same slots as the profile: the cells that tile the peak period.
NonMotifFeatures nonmotif_features(std::span<const PeakDayWindow> windows, int peak_start_minutes = 960);

/// Rank correlation with average ranks for ties. nullopt when either side
/// has no rank variance. Throws config-error for length mismatch or n < 3.
std::optional<double> spearman_rho(std::span<const double> x, std::span<const double> y);

/// Average (1-based) ranks with ties sharing the mean rank.
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace motifvar
