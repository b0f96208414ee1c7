#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "lyricbeat/annotations.hpp"
#include "lyricbeat/beatgrid.hpp"
#include "lyricbeat/lyrics.hpp"

namespace lyricbeat {

/// Fully resolved analysis settings.
struct Config {
  double buffer_fraction = 0.5;
  double keyword_ratio = 0.5;
  std::filesystem::path dict_path;
  std::filesystem::path stopwords_path;
  std::size_t syllable_mismatch_tolerance = 0;
  bool exclude_rest_beats = false;
  MeterGroupings meter_groupings = MeterGroupings::defaults();
  MonosyllableStress monosyllable_stress = MonosyllableStress::kAlwaysStressed;
  PronunableColumns columns;
  double histogram_bin_width = 0.05;
  std::vector<std::string> bands;  // empty means default_bands()
};

/// Ordered key/value settings from one source (CLI flags, a per-song
/// metadata file). Later entries win; meter_grouping entries accumulate per
/// meter.
struct ConfigLayer {
  std::vector<std::pair<std::string, std::string>> entries;

  void set(std::string key, std::string value) {
    entries.emplace_back(std::move(key), std::move(value));
  }
  bool empty() const noexcept { return entries.empty(); }
};

/// Reads `key = value` lines. Values may be double-quoted; '#' starts a
/// comment. Throws ParseError with the line number.
ConfigLayer parse_config_layer(std::istream& in);
ConfigLayer load_config_layer(const std::filesystem::path& path);

/// Keys that only make sense once per run and are rejected in per-song
/// metadata: dict, stopwords, histogram_bin_width, band.
bool is_run_level_key(const std::string& key);

/// Applies a layer on top of `config`. Throws PreconditionError on unknown
/// keys or invalid values.
void apply(Config& config, const ConfigLayer& layer);

/// Convenience: defaults, then each layer in order of increasing precedence.
Config resolve_config(const Config& defaults, const std::vector<const ConfigLayer*>& layers);

}  // namespace lyricbeat
