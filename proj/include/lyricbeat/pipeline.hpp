#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lyricbeat/alignment.hpp"
#include "lyricbeat/beatgrid.hpp"
#include "lyricbeat/config.hpp"
#include "lyricbeat/keywords.hpp"
#include "lyricbeat/lyrics.hpp"
#include "lyricbeat/metrics.hpp"
#include "lyricbeat/patterning.hpp"

namespace lyricbeat {

/// Input files for one song.
struct SongBundle {
  std::string song_id;
  std::filesystem::path midi;
  std::filesystem::path vocal_beats;
  std::filesystem::path pronunables;
  std::filesystem::path lyrics;
  std::optional<std::filesystem::path> metadata;
};

/// Finds `<id>.mid` files directly under `root` and pairs each with
/// `<id>.beats.txt`, `<id>.pronunables.csv`, `<id>.lyrics.txt` and an
/// optional `<id>.meta`. Sorted by id.
std::vector<SongBundle> discover_bundles(const std::filesystem::path& root);

/// Read-only data shared by every song of a run.
struct Resources {
  PronouncingDictionary dictionary;
  StopwordSet stopwords;

  static Resources load(const Config& config);
};

/// Pipeline stages, in order.
inline constexpr const char* kStages[] = {"ingest",   "beatgrid",   "alignment",
                                          "lyrics",   "patterning", "metrics"};

/// Everything known about one song after running the pipeline. When a stage
/// fails, `analyzable` is false and later fields keep their defaults.
struct SongReport {
  std::string song_id;
  bool analyzable = false;
  std::string failed_stage;
  std::string error;
  Config config;

  std::size_t vocal_beat_count = 0;
  std::size_t pronunable_count = 0;
  std::vector<std::string> meters;
  bool meter_convention = false;
  double buffer_seconds = 0.0;

  BeatGrid grid;
  AlignmentIndexMap vocal_alignment;
  AlignmentIndexMap located;

  std::vector<std::string> tokens;
  StressPatternList stress;
  std::string keyword_extractor;
  std::optional<SyllableMatch> syllables;

  BinaryPattern kp{PatternKind::kKeyword};
  BinaryPattern psp{PatternKind::kPronunableStrong};
  BinaryPattern wpsp{PatternKind::kWordStrong};
  BinaryPattern stress_flags{PatternKind::kStress};
  BinaryPattern sssp{PatternKind::kStressedStrong};

  std::optional<MatchStats> stats;
  std::vector<std::string> warnings;

  /// Short machine-readable markers for the dataset CSV.
  std::vector<std::string> flags() const;
};

/// Resolves the song's config (run config, then its metadata file, then the
/// CLI layer) and runs every stage. Song-level failures are recorded in the
/// report rather than thrown.
SongReport analyze_bundle(const SongBundle& bundle, const Config& run_config,
                          const ConfigLayer& cli_layer, const Resources& resources);

enum ExitCode : int { kExitSuccess = 0, kExitPartial = 1, kExitFatal = 2 };

struct BatchResult {
  std::vector<SongReport> reports;  // sorted by song id
  std::optional<DatasetSummary> summary;
  int exit_code = kExitSuccess;
};

/// Analyzes every bundle (up to `jobs` at a time) and summarizes the
/// analyzable ones. Throws Error when there are no bundles.
BatchResult run_batch(const std::vector<SongBundle>& bundles, const Config& run_config,
                      const ConfigLayer& cli_layer, const Resources& resources, std::size_t jobs);

}  // namespace lyricbeat
