#include "lyricbeat/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lyricbeat/error.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace lyricbeat {

namespace {

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

ordered_json to_json(const AlignmentIndexMap& map) {
  std::vector<int> interpolated;
  for (bool b : map.interpolated) interpolated.push_back(b ? 1 : 0);
  return {{"indices", map.indices}, {"interpolated", interpolated}};
}

ordered_json to_json(const MetricSummary& m) {
  ordered_json bands = ordered_json::array();
  for (const auto& b : m.bands)
    bands.push_back({{"band", b.band}, {"songs", b.songs}, {"fraction", b.fraction}});
  return {{"defined", m.defined},
          {"average", optional_number(m.average)},
          {"bands", bands},
          {"histogram", m.histogram.counts}};
}

std::string histogram_rows(const Histogram& a, const Histogram& b) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,count_kw,count_stress\n";
  for (std::size_t k = 0; k < a.counts.size(); ++k) {
    out << fixed2(a.bin_lo[k]) << ',' << fixed2(a.bin_hi[k]) << ',' << a.counts[k] << ','
        << (k < b.counts.size() ? b.counts[k] : 0) << '\n';
  }
  return out.str();
}

}  // namespace

ordered_json to_json(const Config& c) {
  ordered_json groupings = ordered_json::array();
  for (const auto& [meter, groups] : c.meter_groupings.entries())
    groupings.push_back(to_string(TimeSignature{meter.first, meter.second, groups}));
  return {
      {"buffer_fraction", c.buffer_fraction},
      {"keyword_ratio", c.keyword_ratio},
      {"dict", c.dict_path.string()},
      {"stopwords", c.stopwords_path.string()},
      {"syllable_mismatch_tolerance", c.syllable_mismatch_tolerance},
      {"exclude_rest_beats", c.exclude_rest_beats},
      {"meter_groupings", groupings},
      {"monosyllable_stress",
       c.monosyllable_stress == MonosyllableStress::kAlwaysStressed ? "always" : "keyword"},
      {"csv_columns",
       {{"start", c.columns.start}, {"end", c.columns.end}, {"label", c.columns.label}}},
  };
}

ordered_json to_json(const SongReport& r) {
  ordered_json j;
  j["song_id"] = r.song_id;
  j["analyzable"] = r.analyzable;
  if (!r.analyzable) j["error"] = {{"stage", r.failed_stage}, {"cause", r.error}};
  j["config"] = to_json(r.config);

  j["counts"] = {{"beats", r.grid.size()},
                 {"vocal_beats", r.vocal_beat_count},
                 {"pronunables", r.pronunable_count},
                 {"tokens", r.tokens.size()},
                 {"syllables", count_syllables(r.stress)}};
  j["beat_grid"] = {{"meters", r.meters},
                    {"meter_convention", r.meter_convention},
                    {"beats_per_measure", r.grid.beats_per_measure},
                    {"buffer_seconds", r.buffer_seconds},
                    {"beat_times", r.grid.beat_times},
                    {"measure_offsets", r.grid.measure_offsets}};
  j["alignment"] = {{"vocal_to_music", to_json(r.vocal_alignment)},
                    {"pronunable_beats", to_json(r.located)}};
  j["lyrics"] = {{"tokens", r.tokens},
                 {"stress_patterns", r.stress.patterns},
                 {"keyword_extractor", r.keyword_extractor}};
  if (r.syllables) {
    ordered_json spans = ordered_json::array();
    for (const auto& s : r.syllables->spans) spans.push_back({s.word_index, s.first, s.count});
    j["syllable_match"] = {{"delta", r.syllables->delta},
                           {"expected_per_word", r.syllables->expected_per_word},
                           {"words_dropped", r.syllables->words_dropped},
                           {"spans", spans}};
  }
  j["patterns"] = {{"SP", r.grid.sp.to_string()},   {"PSP", r.psp.to_string()},
                   {"WPSP", r.wpsp.to_string()},    {"KP", r.kp.to_string()},
                   {"STRESS", r.stress_flags.to_string()}, {"SSSP", r.sssp.to_string()}};
  if (r.stats) {
    const MatchStats& s = *r.stats;
    j["metrics"] = {
        {"p_keyword_given_strong", s.p_keyword_given_strong},
        {"p_strong", s.p_strong},
        {"p_joint", s.p_joint},
        {"p_stress_given_strong", s.p_stress_given_strong},
        {"p_stress_joint", s.p_stress_joint},
        {"cos_wpsp_kp", optional_number(s.cos_wpsp_kp)},
        {"cos_psp_stress", optional_number(s.cos_psp_stress)},
        {"cos_psp_sssp", optional_number(s.cos_psp_sssp)},
        {"counts",
         {{"total_beats", s.counts.total_beats},
          {"strong_beats", s.counts.strong_beats},
          {"keyword_on_strong", s.counts.keyword_on_strong},
          {"stress_on_strong", s.counts.stress_on_strong},
          {"words", s.counts.words},
          {"pronunables", s.counts.pronunables}}},
    };
  }
  j["flags"] = r.flags();
  j["warnings"] = r.warnings;
  return j;
}

ordered_json to_json(const DatasetSummary& s) {
  return {{"songs", s.songs},
          {"p_keyword_given_strong", to_json(s.p_keyword)},
          {"p_stress_given_strong", to_json(s.p_stress)},
          {"cos_wpsp_kp", to_json(s.cos_wpsp_kp)},
          {"cos_psp_stress", to_json(s.cos_psp_stress)}};
}

std::string dataset_csv(const std::vector<SongReport>& reports) {
  std::ostringstream out;
  out << kDatasetCsvHeader << '\n';
  for (const SongReport& r : reports) {
    std::string flags;
    for (const auto& f : r.flags()) flags += (flags.empty() ? "" : ";") + f;
    out << csv_field(r.song_id) << ',';
    if (r.stats) {
      const MatchStats& s = *r.stats;
      out << fixed6(s.p_keyword_given_strong) << ',' << fixed6(s.p_stress_given_strong) << ','
          << (s.cos_wpsp_kp ? fixed6(*s.cos_wpsp_kp) : "") << ','
          << (s.cos_psp_stress ? fixed6(*s.cos_psp_stress) : "") << ',' << s.counts.total_beats
          << ',' << s.counts.strong_beats << ',' << s.counts.words << ','
          << s.counts.pronunables << ',';
    } else {
      out << ",,,,,,,,";
    }
    out << csv_field(flags) << '\n';
  }
  return out.str();
}

std::string histogram_csv(const DatasetSummary& s) {
  return histogram_rows(s.p_keyword.histogram, s.p_stress.histogram);
}

std::string similarity_histogram_csv(const DatasetSummary& s) {
  return histogram_rows(s.cos_wpsp_kp.histogram, s.cos_psp_stress.histogram);
}

void write_text_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
  if (!out) throw Error("failed writing " + path.string());
}

fs::path write_song_report(const fs::path& dir, const SongReport& report) {
  fs::create_directories(dir);
  const fs::path path = dir / (report.song_id + ".json");
  write_text_file(path, to_json(report).dump(2) + "\n");
  return path;
}

void write_batch_outputs(const fs::path& dir, const std::vector<SongReport>& reports,
                         const DatasetSummary* summary) {
  fs::create_directories(dir);
  // Songs whose inputs could not be read get a failure entry but no report.
  for (const SongReport& r : reports)
    if (r.analyzable || r.failed_stage != kStages[0]) write_song_report(dir, r);
  write_text_file(dir / "dataset.csv", dataset_csv(reports));
  ordered_json j = ordered_json::object();
  if (summary) {
    write_text_file(dir / "histogram.csv", histogram_csv(*summary));
    write_text_file(dir / "similarity_histogram.csv", similarity_histogram_csv(*summary));
    j = to_json(*summary);
  } else {
    j["songs"] = 0;
  }
  ordered_json failures = ordered_json::array();
  for (const SongReport& r : reports) {
    if (!r.analyzable)
      failures.push_back({{"song_id", r.song_id}, {"stage", r.failed_stage}, {"cause", r.error}});
  }
  j["unanalyzable"] = failures;
  write_text_file(dir / "summary.json", j.dump(2) + "\n");
}

}  // namespace lyricbeat
