#include "lyricbeat/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "lyricbeat/annotations.hpp"
#include "lyricbeat/error.hpp"
#include "lyricbeat/midi.hpp"

namespace fs = std::filesystem;

namespace lyricbeat {

namespace {

std::string signed_string(long v) { return (v > 0 ? "+" : "") + std::to_string(v); }

}  // namespace

std::vector<SongBundle> discover_bundles(const fs::path& root) {
  if (!fs::is_directory(root)) throw Error("not a directory: " + root.string());
  std::vector<SongBundle> bundles;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".mid") continue;
    const std::string id = entry.path().stem().string();
    SongBundle b;
    b.song_id = id;
    b.midi = entry.path();
    b.vocal_beats = root / (id + ".beats.txt");
    b.pronunables = root / (id + ".pronunables.csv");
    b.lyrics = root / (id + ".lyrics.txt");
    if (const fs::path meta = root / (id + ".meta"); fs::exists(meta)) b.metadata = meta;
    bundles.push_back(std::move(b));
  }
  std::sort(bundles.begin(), bundles.end(),
            [](const SongBundle& a, const SongBundle& b) { return a.song_id < b.song_id; });
  return bundles;
}

Resources Resources::load(const Config& config) {
  if (config.dict_path.empty()) throw Error("no pronouncing dictionary configured");
  if (config.stopwords_path.empty()) throw Error("no stopword list configured");
  return Resources{PronouncingDictionary::load(config.dict_path),
                   load_stopwords(config.stopwords_path)};
}

std::vector<std::string> SongReport::flags() const {
  std::vector<std::string> out;
  if (!analyzable) out.push_back("unanalyzable:" + failed_stage);
  if (syllables && syllables->delta != 0)
    out.push_back("syllable_delta=" + signed_string(syllables->delta));
  if (syllables && syllables->words_dropped > 0)
    out.push_back("words_dropped=" + std::to_string(syllables->words_dropped));
  if (meter_convention) out.push_back("meter_convention");
  if (const auto n = vocal_alignment.interpolated_count())
    out.push_back("interpolated_vocal=" + std::to_string(n));
  if (const auto n = located.interpolated_count())
    out.push_back("interpolated_pronunables=" + std::to_string(n));
  if (stats) {
    if (!stats->cos_wpsp_kp) out.push_back("cos_wpsp_kp_undefined");
    if (!stats->cos_psp_stress) out.push_back("cos_psp_stress_undefined");
  }
  return out;
}

SongReport analyze_bundle(const SongBundle& bundle, const Config& run_config,
                          const ConfigLayer& cli_layer, const Resources& resources) {
  SongReport r;
  r.song_id = bundle.song_id;
  r.config = run_config;
  std::string stage = kStages[0];
  try {
    ConfigLayer meta;
    if (bundle.metadata) {
      meta = load_config_layer(*bundle.metadata);
      for (const auto& [key, value] : meta.entries) {
        if (is_run_level_key(key))
          throw PreconditionError("'" + key + "' cannot be set per song");
      }
    }
    r.config = resolve_config(run_config, {&meta, &cli_layer});
    const Config& cfg = r.config;

    const MidiSong song = read_smf_file(bundle.midi);
    const VocalBeats vocal = read_vocal_beats(bundle.vocal_beats);
    const PronunableTrack pronunables = read_pronunables(bundle.pronunables, cfg.columns);
    const std::string lyrics = read_text_file(bundle.lyrics);
    r.vocal_beat_count = vocal.times.size();
    r.pronunable_count = pronunables.size();

    stage = kStages[1];
    r.grid = build_beat_grid(song, cfg.meter_groupings);
    for (const auto& seg : r.grid.segments) r.meters.push_back(to_string(seg.meter));
    r.meter_convention = r.grid.uses_meter_convention();
    if (r.meter_convention)
      r.warnings.push_back("strong beats for meters other than 2/4 and 4/4 follow the built-in "
                           "meter table");
    const TimeBuffer buf = default_buffer(r.grid, cfg.buffer_fraction);
    r.buffer_seconds = buf.dt;

    stage = kStages[2];
    if (vocal.times.empty()) throw AlignmentError("no vocal beats");
    if (pronunables.empty()) throw AlignmentError("no pronunables");
    r.vocal_alignment = align_vocal_to_music(vocal, r.grid, buf);
    r.located = locate_pronunables(pronunables, vocal, r.vocal_alignment, buf, r.grid);

    stage = kStages[3];
    const std::vector<Token> tokens = preprocess_lyrics(lyrics);
    for (const Token& t : tokens) r.tokens.push_back(t.text);
    const bool keyword_monosyllables = cfg.monosyllable_stress == MonosyllableStress::kDictionary;
    r.stress = stress_patterns(tokens, resources.dictionary, cfg.monosyllable_stress);
    const TermFrequencyExtractor extractor(resources.stopwords, cfg.keyword_ratio);
    r.keyword_extractor = extractor.name();
    const BinaryPattern kp_all = extractor.extract(tokens);
    if (keyword_monosyllables) stress_monosyllabic_keywords(r.stress, kp_all);
    r.warnings.insert(r.warnings.end(), r.stress.warnings.begin(), r.stress.warnings.end());

    stage = kStages[4];
    try {
      r.syllables = match_pronunables_to_syllables(pronunables.size(), r.stress,
                                                   cfg.syllable_mismatch_tolerance);
    } catch (const SyllableMismatchError& e) {
      SyllableMatch failed;
      failed.delta = e.delta();
      failed.expected_per_word = e.expected_per_word();
      r.syllables = std::move(failed);
      throw;
    }
    const auto& spans = r.syllables->spans;
    r.warnings.insert(r.warnings.end(), r.syllables->warnings.begin(),
                      r.syllables->warnings.end());
    r.kp = BinaryPattern(PatternKind::kKeyword,
                         std::vector<std::uint8_t>(kp_all.flags().begin(),
                                                   kp_all.flags().begin() +
                                                       static_cast<long>(spans.size())));
    r.psp = build_psp(r.located, r.grid.sp);
    r.wpsp = psp_to_wpsp(r.psp, spans);
    r.stress_flags = stress_per_pronunable(flatten_stress(r.stress), pronunables.size());
    r.sssp = build_sssp(r.psp, r.stress_flags);

    stage = kStages[5];
    r.stats = analyze_song(r.grid, r.located, spans, r.psp, r.wpsp, r.kp, r.stress_flags,
                           AnalysisOptions{cfg.exclude_rest_beats});
    r.warnings.insert(r.warnings.end(), r.stats->warnings.begin(), r.stats->warnings.end());
    r.analyzable = true;
  } catch (const std::exception& e) {
    r.analyzable = false;
    r.failed_stage = stage;
    r.error = e.what();
  }
  return r;
}

BatchResult run_batch(const std::vector<SongBundle>& bundles, const Config& run_config,
                      const ConfigLayer& cli_layer, const Resources& resources, std::size_t jobs) {
  if (bundles.empty()) throw Error("no song bundles found");
  for (std::size_t i = 1; i < bundles.size(); ++i) {
    if (bundles[i].song_id == bundles[i - 1].song_id)
      throw Error("duplicate song id '" + bundles[i].song_id + "'");
  }

  BatchResult result;
  result.reports.resize(bundles.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < bundles.size(); i = next++)
      result.reports[i] = analyze_bundle(bundles[i], run_config, cli_layer, resources);
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, bundles.size());
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::sort(result.reports.begin(), result.reports.end(),
            [](const SongReport& a, const SongReport& b) { return a.song_id < b.song_id; });

  std::vector<MatchStats> stats;
  for (const SongReport& r : result.reports)
    if (r.analyzable) stats.push_back(*r.stats);
  if (stats.empty()) {
    result.exit_code = kExitFatal;
    return result;
  }
  std::vector<Band> bands;
  for (const auto& b : run_config.bands) bands.push_back(Band::parse(b));
  if (bands.empty()) bands = default_bands();
  result.summary = summarize_dataset(stats, bands, run_config.histogram_bin_width);
  result.exit_code = stats.size() == result.reports.size() ? kExitSuccess : kExitPartial;
  return result;
}

}  // namespace lyricbeat
