#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motifvar/ingest.hpp"

namespace motifvar {

struct SaxParams {
  int alphabet_size = 5;
  int motif_len = 6;
  double noise_floor_watts = 100.0;
  bool include_final_window = false;

  /// Throws config-error on out-of-range values.
  void validate() const;
};

/// A symbolized window: motif_len letters drawn from the first
/// alphabet_size letters of 'a'..'j'.
class MotifWord {
 public:
  MotifWord() = default;
  /// Throws config-error when `symbols` is empty or uses letters beyond the alphabet.
  MotifWord(std::string symbols, int alphabet_size);

  const std::string& str() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  char operator[](std::size_t i) const { return symbols_[i]; }

  friend auto operator<=>(const MotifWord&, const MotifWord&) = default;
  friend bool operator==(const MotifWord&, const MotifWord&) = default;

 private:
  std::string symbols_;
};

struct DeltaSeries {
  std::string household_id;
  Date date;
  std::vector<double> deltas;
};

/// First differences of a valid window; nullopt for an invalid one.
std::optional<DeltaSeries> difference(const PeakDayWindow& window);

/// Inverse of the standard normal CDF.
double normal_quantile(double p);

/// Standard-normal quantiles at i/alphabet_size, i = 1..alphabet_size-1.
std::vector<double> breakpoints(int alphabet_size);

/// Z-normalizes `values` (population sd) and maps each to its breakpoint bin;
/// a value equal to a threshold takes the lower letter. Returns nullopt when
/// the raw range is below noise_floor or the window has no spread.
std::optional<MotifWord> symbolize_window(std::span<const double> values, std::span<const double> cuts,
                                          double noise_floor);

struct WindowOccurrence {
  std::string household_id;
  Date date;
  int start_slot = 0;
  int start_clock = 0;  // minutes after peak start
  MotifWord word;
  double range_watts = 0.0;
};

/// Number of sliding windows considered per day.
int window_count(std::size_t delta_count, const SaxParams& params);

/// Slides a motif_len window one slot at a time. Filtered windows are omitted.
std::vector<WindowOccurrence> window_words(const DeltaSeries& deltas, const SaxParams& params = {});

}  // namespace motifvar
