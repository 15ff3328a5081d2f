#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motifvar/ingest.hpp"
#include "motifvar/matrix.hpp"
#include "motifvar/motif.hpp"

namespace motifvar {

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

std::vector<std::string_view> split_fields(std::string_view line);

void write_readings_csv(std::ostream& out, std::span<const RawReading> readings);

/// household_id,date,valid,r00..rNN
void write_windows_csv(std::ostream& out, std::span<const PeakDayWindow> windows);
std::vector<PeakDayWindow> read_windows_csv(std::istream& in);

/// household_id,<columns...>
void write_feature_matrix_csv(std::ostream& out, const FeatureMatrix& matrix);
FeatureMatrix read_feature_matrix_csv(std::istream& in);

/// household_id,algorithm,cluster
void write_partition_csv(std::ostream& out, const Partition& partition);
/// k is taken as the largest label present.
Partition read_partition_csv(std::istream& in);

/// household_id,days_sampled,word,date,start_clock
void write_catalog_csv(std::ostream& out, std::span<const MotifCatalog> catalogs);
std::vector<MotifCatalog> read_catalog_csv(std::istream& in, int alphabet_size);

/// Opens for reading; throws Error("input-not-found").
std::ifstream open_input(const std::filesystem::path& path);
/// Writes the whole file or throws Error("output-error").
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace motifvar
