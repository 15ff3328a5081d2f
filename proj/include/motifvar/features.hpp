#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motifvar/ingest.hpp"
#include "motifvar/matrix.hpp"
#include "motifvar/motif.hpp"
#include "motifvar/sax.hpp"

namespace motifvar {

enum class FeatureMode { motif, profile, nonmotif };

std::string to_string(FeatureMode mode);
std::optional<FeatureMode> parse_feature_mode(std::string_view text);

using WindowsByHousehold = std::map<std::string, std::vector<PeakDayWindow>>;

WindowsByHousehold group_windows(std::span<const PeakDayWindow> windows);

/// Motif catalog of every household after trivial-family exclusion, built
/// from valid windows only.
std::vector<MotifCatalog> build_catalogs(const WindowsByHousehold& windows, const SaxParams& params,
                                         int threads = 1);

/// Raw (un-normalized) feature matrix, one row per household in id order.
/// Columns: motif f1..f8; profile p00..p47; nonmotif tmax_sd, total_sd.
/// Households without a valid window are skipped.
FeatureMatrix feature_matrix(const WindowsByHousehold& windows, FeatureMode mode, const SaxParams& params,
                             int peak_start_minutes = 16 * 60, int threads = 1);

}  // namespace motifvar
