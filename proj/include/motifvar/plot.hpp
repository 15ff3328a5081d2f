#pragma once

#include <span>
#include <string>

#include "motifvar/matrix.hpp"
#include "motifvar/motif.hpp"

namespace motifvar {

/// Households grouped by cluster along x; each dot is one occurrence of the
/// household's most frequent motif, at its clock time on y.
std::string svg_timing_scatter(const Partition& partition, std::span<const MotifCatalog> catalogs,
                               int peak_start_minutes, int peak_end_minutes);

/// One panel per occupied cluster, one line per household profile, with the
/// cluster mean drawn on top.
std::string svg_profile_overlay(const Partition& partition, const FeatureMatrix& profiles, int peak_start_minutes);

/// Cluster sizes as bars, with the mean top-motif timing sd of each cluster
/// as a marker on a second axis. `motif` holds raw motif features.
std::string svg_cluster_summary(const Partition& partition, const FeatureMatrix& motif);

}  // namespace motifvar
