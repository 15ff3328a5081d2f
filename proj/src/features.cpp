#include "motifvar/features.hpp"

#include <cstdio>

#include "motifvar/error.hpp"
#include "motifvar/parallel.hpp"

namespace motifvar {

std::string to_string(FeatureMode mode) {
  switch (mode) {
    case FeatureMode::motif: return "motif";
    case FeatureMode::profile: return "profile";
    case FeatureMode::nonmotif: return "nonmotif";
  }
  return "motif";
}

std::optional<FeatureMode> parse_feature_mode(std::string_view text) {
  if (text == "motif") return FeatureMode::motif;
  if (text == "profile") return FeatureMode::profile;
  if (text == "nonmotif") return FeatureMode::nonmotif;
  return std::nullopt;
}

WindowsByHousehold group_windows(std::span<const PeakDayWindow> windows) {
  WindowsByHousehold out;
  for (const auto& w : windows) out[w.household_id].push_back(w);
  return out;
}

namespace {

std::vector<PeakDayWindow> valid_only(const std::vector<PeakDayWindow>& windows) {
  std::vector<PeakDayWindow> out;
  for (const auto& w : windows)
    if (w.valid) out.push_back(w);
  return out;
}

MotifCatalog catalog_for(const std::string& id, const std::vector<PeakDayWindow>& windows, const SaxParams& params) {
  std::vector<WindowOccurrence> occurrences;
  int days = 0;
  for (const auto& w : windows) {
    const auto deltas = difference(w);
    if (!deltas) continue;
    ++days;
    auto words = window_words(*deltas, params);
    occurrences.insert(occurrences.end(), std::make_move_iterator(words.begin()),
                       std::make_move_iterator(words.end()));
  }
  return exclude_trivial(build_catalog(id, occurrences, days));
}

std::vector<std::string> column_names(FeatureMode mode, std::size_t profile_slots) {
  switch (mode) {
    case FeatureMode::motif: return {"f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8"};
    case FeatureMode::nonmotif: return {"tmax_sd", "total_sd"};
    case FeatureMode::profile: break;
  }
  std::vector<std::string> names;
  for (std::size_t s = 0; s < profile_slots; ++s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "p%02zu", s);
    names.emplace_back(buf);
  }
  return names;
}

}  // namespace

std::vector<MotifCatalog> build_catalogs(const WindowsByHousehold& windows, const SaxParams& params, int threads) {
  params.validate();
  std::vector<const std::pair<const std::string, std::vector<PeakDayWindow>>*> entries;
  for (const auto& e : windows) entries.push_back(&e);
  std::vector<MotifCatalog> out(entries.size());
  parallel_for(entries.size(), threads,
               [&](std::size_t i) { out[i] = catalog_for(entries[i]->first, entries[i]->second, params); });
  return out;
}

FeatureMatrix feature_matrix(const WindowsByHousehold& windows, FeatureMode mode, const SaxParams& params,
                             int peak_start_minutes, int threads) {
  params.validate();
  std::vector<std::string> ids;
  std::vector<std::vector<PeakDayWindow>> kept;
  for (const auto& [id, list] : windows) {
    auto valid = valid_only(list);
    if (valid.empty()) continue;
    ids.push_back(id);
    kept.push_back(std::move(valid));
  }
  if (ids.empty()) throw Error("no-households", "no household has a valid peak window");

  const std::size_t slots = kept.front().front().readings.size() - 1;
  std::vector<std::vector<double>> rows(ids.size());
  parallel_for(ids.size(), threads, [&](std::size_t i) {
    switch (mode) {
      case FeatureMode::motif: {
        const auto row = motif_features(catalog_for(ids[i], kept[i], params)).row();
        rows[i].assign(row.begin(), row.end());
        break;
      }
      case FeatureMode::profile:
        rows[i] = profile_features(kept[i]);
        break;
      case FeatureMode::nonmotif: {
        const auto f = nonmotif_features(kept[i], peak_start_minutes);
        rows[i] = {f.time_of_max_sd, f.daily_total_sd};
        break;
      }
    }
  });
  return FeatureMatrix(std::move(ids), column_names(mode, slots), rows);
}

}  // namespace motifvar
