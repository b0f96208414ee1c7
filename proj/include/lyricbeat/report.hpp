#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "lyricbeat/config.hpp"
#include "lyricbeat/metrics.hpp"
#include "lyricbeat/pipeline.hpp"

namespace lyricbeat {

nlohmann::ordered_json to_json(const Config& config);
nlohmann::ordered_json to_json(const SongReport& report);
nlohmann::ordered_json to_json(const DatasetSummary& summary);

inline constexpr const char* kDatasetCsvHeader =
    "song_id,p_kw_sb,p_stress_sb,cos_wpsp_kp,cos_psp_stress,n_beats,n_strong,n_words,"
    "n_pronunables,flags";

/// One row per report in the given order; undefined metrics are empty cells.
std::string dataset_csv(const std::vector<SongReport>& reports);

/// `bin_lo,bin_hi,count_kw,count_stress` over the probability histograms.
std::string histogram_csv(const DatasetSummary& summary);

/// Same layout over the cosine-similarity histograms.
std::string similarity_histogram_csv(const DatasetSummary& summary);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

/// `<dir>/<song_id>.json`
std::filesystem::path write_song_report(const std::filesystem::path& dir, const SongReport& report);

/// Per-song reports (none for songs that failed at ingest), dataset.csv,
/// summary.json with the failure list, and the two histogram CSVs when a
/// summary exists.
void write_batch_outputs(const std::filesystem::path& dir, const std::vector<SongReport>& reports,
                         const DatasetSummary* summary);

}  // namespace lyricbeat
