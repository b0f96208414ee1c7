// lyricbeat: lyric/beat alignment analysis for single songs or whole datasets.

#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lyricbeat/error.hpp"
#include "lyricbeat/pipeline.hpp"
#include "lyricbeat/report.hpp"

#ifndef LYRICBEAT_DEFAULT_DATA_DIR
#define LYRICBEAT_DEFAULT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace lyricbeat;

namespace {

struct Options {
  std::optional<fs::path> config_file;
  std::optional<double> buffer_fraction;
  std::optional<double> keyword_ratio;
  std::optional<std::string> dict;
  std::optional<std::string> stopwords;
  std::optional<std::size_t> tolerance;
  bool exclude_rest_beats = false;
  std::vector<std::string> meter_groupings;
  std::optional<std::string> monosyllable_stress;
  std::optional<std::string> csv_columns;
  std::optional<double> bin_width;
  std::vector<std::string> bands;
  std::optional<fs::path> out;
  std::size_t jobs = 0;
  bool quiet = false;
};

ConfigLayer cli_layer(const Options& o) {
  ConfigLayer layer;
  auto put = [&](const char* key, const auto& value) {
    if (value) layer.set(key, CLI::detail::to_string(*value));
  };
  put("buffer_fraction", o.buffer_fraction);
  put("keyword_ratio", o.keyword_ratio);
  put("dict", o.dict);
  put("stopwords", o.stopwords);
  put("syllable_mismatch_tolerance", o.tolerance);
  if (o.exclude_rest_beats) layer.set("exclude_rest_beats", "true");
  for (const auto& g : o.meter_groupings) layer.set("meter_grouping", g);
  put("monosyllable_stress", o.monosyllable_stress);
  put("csv_columns", o.csv_columns);
  put("histogram_bin_width", o.bin_width);
  for (const auto& b : o.bands) layer.set("band", b);
  return layer;
}

// Built-in defaults < --config file < flags. Flags are applied again per song
// so they also override per-song metadata.
Config run_config(const Options& o, const ConfigLayer& flags) {
  Config base;
  base.dict_path = fs::path(LYRICBEAT_DEFAULT_DATA_DIR) / "cmudict.dict";
  base.stopwords_path = fs::path(LYRICBEAT_DEFAULT_DATA_DIR) / "stopwords.txt";
  ConfigLayer file;
  if (o.config_file) file = load_config_layer(*o.config_file);
  return resolve_config(base, {&file, &flags});
}

void print_warnings(const SongReport& r) {
  for (const auto& w : r.warnings) std::cerr << r.song_id << ": warning: " << w << '\n';
  if (!r.analyzable)
    std::cerr << r.song_id << ": unanalyzable at " << r.failed_stage << ": " << r.error << '\n';
}

int run_analyze(const Options& o, const SongBundle& bundle) {
  const ConfigLayer flags = cli_layer(o);
  const Config config = run_config(o, flags);
  const Resources resources = Resources::load(config);
  const SongReport report = analyze_bundle(bundle, config, flags, resources);
  if (!o.quiet) print_warnings(report);
  if (o.out) {
    std::cerr << "wrote " << write_song_report(*o.out, report).string() << '\n';
  } else {
    std::cout << to_json(report).dump(2) << '\n';
  }
  if (report.analyzable) return kExitSuccess;
  return report.failed_stage == kStages[0] ? kExitFatal : kExitPartial;
}

int run_batch_dir(const Options& o, const fs::path& dir) {
  const ConfigLayer flags = cli_layer(o);
  const Config config = run_config(o, flags);
  const Resources resources = Resources::load(config);
  const auto bundles = discover_bundles(dir);
  const std::size_t jobs = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
  const BatchResult result = run_batch(bundles, config, flags, resources, jobs);

  std::size_t ok = 0;
  for (const auto& r : result.reports) {
    if (!o.quiet) print_warnings(r);
    ok += r.analyzable ? 1 : 0;
  }
  const fs::path out = o.out.value_or(dir / "lyricbeat_out");
  write_batch_outputs(out, result.reports, result.summary ? &*result.summary : nullptr);
  std::cerr << ok << "/" << result.reports.size() << " songs analyzable; outputs in "
            << out.string() << '\n';
  if (result.summary && !o.quiet) {
    const auto show = [](const char* name, const MetricSummary& m) {
      std::cerr << "  " << name << ": ";
      if (m.average) std::cerr << "mean " << *m.average << " over " << m.defined << " songs\n";
      else std::cerr << "undefined for every song\n";
    };
    show("P(keyword | strong)", result.summary->p_keyword);
    show("P(stress | strong)", result.summary->p_stress);
    show("cos(WPSP, KP)", result.summary->cos_wpsp_kp);
    show("cos(PSP, stress)", result.summary->cos_psp_stress);
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measure how lyric keywords and stressed syllables fall on strong musical beats"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config_file, "Run configuration file (key = value)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--buffer-fraction", o.buffer_fraction,
                    "Alignment window as a fraction of the median beat interval");
    cmd->add_option("--keyword-ratio", o.keyword_ratio, "Fraction of word types kept as keywords");
    cmd->add_option("--dict", o.dict, "Pronouncing dictionary (CMUdict format)");
    cmd->add_option("--stopwords", o.stopwords, "Stopword list, one word per line");
    cmd->add_option("--syllable-mismatch-tolerance", o.tolerance,
                    "Allowed |pronunables - syllables| before a song is unanalyzable");
    cmd->add_flag("--exclude-rest-beats", o.exclude_rest_beats,
                  "Only count beats that carry a pronunable");
    cmd->add_option("--meter-grouping", o.meter_groupings, "Beat grouping, e.g. 7/8:3+2+2")
        ->take_all();
    cmd->add_option("--monosyllable-stress", o.monosyllable_stress,
                    "always: every one-syllable word is stressed; keyword: only keywords")
        ->check(CLI::IsMember({"always", "keyword"}));
    cmd->add_option("--csv-columns", o.csv_columns,
                    "Pronunable CSV column names, e.g. start=onset,end=offset,label=syl");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_flag("-q,--quiet", o.quiet, "Suppress per-song warnings");
  };

  SongBundle single;
  std::optional<fs::path> meta;
  auto* analyze = app.add_subcommand("analyze", "Analyze one song");
  add_common(analyze);
  analyze->add_option("--midi", single.midi, "Standard MIDI file")->required()->check(CLI::ExistingFile);
  analyze->add_option("--beats", single.vocal_beats, "Vocal beat times, one per line")->required();
  analyze->add_option("--pronunables", single.pronunables, "Pronunable CSV")->required();
  analyze->add_option("--lyrics", single.lyrics, "Lyrics text")->required();
  analyze->add_option("--id", single.song_id, "Song id (default: MIDI file stem)");
  analyze->add_option("--meta", meta, "Per-song settings file")->check(CLI::ExistingFile);

  fs::path dir;
  auto* batch = app.add_subcommand("batch", "Analyze every song bundle in a directory");
  add_common(batch);
  batch->add_option("dir", dir, "Directory of <id>.mid/.beats.txt/.pronunables.csv/.lyrics.txt")
      ->required()
      ->check(CLI::ExistingDirectory);
  batch->add_option("-j,--jobs", o.jobs, "Worker threads (default: hardware concurrency)");
  batch->add_option("--histogram-bin-width", o.bin_width, "Histogram bin width");
  batch->add_option("--band", o.bands, "Summary band such as >=0.90 or 0.60-0.70 (repeatable)")
      ->take_all();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitFatal;
  }

  try {
    if (*analyze) {
      if (single.song_id.empty()) single.song_id = single.midi.stem().string();
      single.metadata = meta;
      return run_analyze(o, single);
    }
    return run_batch_dir(o, dir);
  } catch (const std::exception& e) {
    std::cerr << "lyricbeat: " << e.what() << '\n';
    return kExitFatal;
  }
}
