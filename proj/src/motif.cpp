#include "motifvar/motif.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "motifvar/error.hpp"

namespace motifvar {

namespace {

double population_sd(std::span<const double> v) {
  if (v.empty()) return 0.0;
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / n);
}

// Position of the odd symbol in a single-spike word.
std::size_t spike_position(const MotifWord& w) {
  const char base = w[0] == w[1] ? w[0] : (w[0] == w[2] ? w[0] : w[1]);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != base) return i;
  return w.size();
}

}  // namespace

std::size_t MotifCatalog::total_occurrences() const {
  std::size_t n = 0;
  for (const auto& [word, occ] : entries) n += occ.size();
  return n;
}

MotifCatalog build_catalog(std::string household_id, std::span<const WindowOccurrence> occurrences,
                           int days_sampled) {
  MotifCatalog catalog{std::move(household_id), {}, days_sampled};
  for (const auto& o : occurrences) catalog.entries[o.word].push_back({o.date, o.start_clock});
  for (auto& [word, list] : catalog.entries) std::sort(list.begin(), list.end());
  return catalog;
}

bool is_single_spike(const MotifWord& word) {
  if (word.size() < 3) return false;
  std::map<char, int> counts;
  for (std::size_t i = 0; i < word.size(); ++i) ++counts[word[i]];
  if (counts.size() != 2) return false;
  const auto minority = std::min(counts.begin()->second, std::next(counts.begin())->second);
  return minority == 1;
}

MotifCatalog exclude_trivial(MotifCatalog catalog) {
  std::erase_if(catalog.entries, [](const auto& entry) {
    const MotifWord& w = entry.first;
    return is_single_spike(w) && spike_position(w) != w.size() - 1;
  });
  return catalog;
}

std::optional<double> timing_sd(std::span<const double> minutes) {
  if (minutes.empty()) return std::nullopt;
  return population_sd(minutes);
}

std::array<double, 8> MotifFeatures::row() const {
  return {occurrences[0], timing_sd[0], occurrences[1], timing_sd[1],
          occurrences[2], timing_sd[2], repeated,       regular};
}

std::vector<RankedMotif> rank_motifs(const MotifCatalog& catalog) {
  std::vector<RankedMotif> ranked;
  ranked.reserve(catalog.entries.size());
  for (const auto& [word, occ] : catalog.entries) ranked.push_back({word, occ.size()});
  // entries is ordered by word, so a stable sort on count keeps ties lexicographic.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedMotif& a, const RankedMotif& b) { return a.count > b.count; });
  return ranked;
}

int regular_day_threshold(int days_sampled) { return (30 * days_sampled + 99) / 100; }

MotifFeatures motif_features(const MotifCatalog& catalog) {
  MotifFeatures f;
  const auto ranked = rank_motifs(catalog);
  for (std::size_t k = 0; k < 3 && k < ranked.size(); ++k) {
    const auto& occ = catalog.entries.at(ranked[k].word);
    std::vector<double> times;
    times.reserve(occ.size());
    for (const auto& o : occ) times.push_back(o.start_clock);
    f.occurrences[k] = static_cast<double>(occ.size());
    f.timing_sd[k] = timing_sd(times).value_or(0.0);
  }
  const int threshold = std::max(1, regular_day_threshold(catalog.days_sampled));
  for (const auto& [word, occ] : catalog.entries) {
    if (occ.size() >= 2) f.repeated += 1.0;
    std::set<Date> days;
    for (const auto& o : occ) days.insert(o.date);
    if (static_cast<int>(days.size()) >= threshold) f.regular += 1.0;
  }
  return f;
}

std::vector<double> profile_features(std::span<const PeakDayWindow> windows) {
  if (windows.empty()) throw config_error("profile needs at least one window");
  const std::size_t slots = windows.front().readings.size() - 1;
  std::vector<double> profile(slots, 0.0);
  for (const auto& w : windows) {
    if (w.readings.size() != slots + 1) throw config_error("windows differ in length");
    for (std::size_t s = 0; s < slots; ++s) profile[s] += w.readings[s];
  }
  for (auto& v : profile) v /= static_cast<double>(windows.size());
  return profile;
}

NonMotifFeatures nonmotif_features(std::span<const PeakDayWindow> windows, int peak_start_minutes) {
  std::vector<double> max_times, totals;
  for (const auto& w : windows) {
    if (w.readings.size() < 2) continue;
    const auto last = w.readings.end() - 1;
    const auto argmax = std::max_element(w.readings.begin(), last) - w.readings.begin();
    max_times.push_back(peak_start_minutes + static_cast<double>(argmax) * kSlotMinutes);
    totals.push_back(std::accumulate(w.readings.begin(), last, 0.0));
  }
  return {population_sd(max_times), population_sd(totals)};
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw config_error("spearman: length mismatch");
  if (x.size() < 3) throw config_error("spearman: need at least 3 pairs");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace motifvar
