#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "lyricbeat/annotations.hpp"
#include "lyricbeat/config.hpp"
#include "lyricbeat/error.hpp"
#include "lyricbeat/pipeline.hpp"
#include "lyricbeat/report.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;
using namespace lyricbeat;
using namespace lyricbeat::testing;

namespace {

Config base_config() {
  Config c;
  c.dict_path = fs::path(LYRICBEAT_TEST_DATA_DIR) / "cmudict.dict";
  c.stopwords_path = fs::path(LYRICBEAT_TEST_DATA_DIR) / "stopwords.txt";
  return c;
}

const Resources& resources() {
  static const Resources r = Resources::load(base_config());
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

SongBundle bundle_in(const fs::path& dir, const std::string& id) {
  for (const auto& b : discover_bundles(dir))
    if (b.song_id == id) return b;
  throw std::runtime_error("no bundle " + id);
}

}  // namespace

TEST_CASE("vocal beat files") {
  std::istringstream ok("# header\n0.0\n\n0.5\n1.25\n");
  CHECK(read_vocal_beats(ok).times == std::vector<double>{0.0, 0.5, 1.25});
  std::istringstream bad("0.0\nabc\n");
  try {
    read_vocal_beats(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
  }
  std::istringstream unordered("0.5\n0.1\n");
  CHECK_THROWS_AS(read_vocal_beats(unordered), PreconditionError);
}

TEST_CASE("pronunable CSV") {
  std::istringstream csv("\xEF\xBB\xBFstart,end,label\n0.1,0.3,\"twin, kle\"\n0.4,0.5,kle\n");
  const auto t = read_pronunables(csv);
  REQUIRE(t.size() == 2);
  CHECK(t.events[0].label == "twin, kle");
  CHECK(t.events[1].start_seconds == doctest::Approx(0.4));

  std::istringstream mapped("onset;x\n");
  CHECK_THROWS_AS(read_pronunables(mapped), ParseError);
  std::istringstream custom("syl,onset,offset\nla,0.1,0.2\n");
  const auto c = read_pronunables(custom, parse_column_mapping("start=onset,end=offset,label=syl"));
  REQUIRE(c.size() == 1);
  CHECK(c.events[0].label == "la");
  CHECK_THROWS_AS(parse_column_mapping("begin=x"), PreconditionError);

  std::istringstream no_label("start,end\n0.1,0.2\n");
  CHECK(read_pronunables(no_label).size() == 1);
  std::istringstream bad("start,end\n0.1,zz\n");
  CHECK_THROWS_AS(read_pronunables(bad), ParseError);
}

TEST_CASE("config layers") {
  std::istringstream in(
      "# run settings\n"
      "buffer_fraction = 0.25\n"
      "meter_grouping = 7/8:3+2+2   # comment\n"
      "csv_columns = \"start=a,end=b\"\n"
      "band = >=0.5\n"
      "band = <0.2\n");
  const ConfigLayer layer = parse_config_layer(in);
  const Config c = resolve_config(Config{}, {&layer});
  CHECK(c.buffer_fraction == 0.25);
  CHECK(c.meter_groupings.find(7, 8) == std::vector<int>{3, 2, 2});
  CHECK(c.meter_groupings.find(5, 8) == std::vector<int>{3, 2});
  CHECK(c.columns.start == "a");
  CHECK(c.bands == std::vector<std::string>{">=0.5", "<0.2"});

  ConfigLayer override;
  override.set("buffer_fraction", "0.4");
  CHECK(resolve_config(Config{}, {&layer, &override}).buffer_fraction == 0.4);

  ConfigLayer unknown;
  unknown.set("bogus", "1");
  CHECK_THROWS_AS(resolve_config(Config{}, {&unknown}), PreconditionError);
  ConfigLayer bad_ratio;
  bad_ratio.set("keyword_ratio", "0");
  CHECK_THROWS_AS(resolve_config(Config{}, {&bad_ratio}), PreconditionError);
  std::istringstream malformed("just text\n");
  CHECK_THROWS_AS(parse_config_layer(malformed), ParseError);
  CHECK(is_run_level_key("dict"));
  CHECK_FALSE(is_run_level_key("buffer_fraction"));
}

TEST_CASE("single song end to end") {
  const fs::path dir = scratch_dir("single");
  write_bundle(dir, perfect_bundle("perfect"));
  const SongReport r = analyze_bundle(bundle_in(dir, "perfect"), base_config(), {}, resources());
  REQUIRE_MESSAGE(r.analyzable, r.error);
  REQUIRE(r.stats);
  CHECK(r.stats->p_keyword_given_strong == 1.0);
  CHECK(r.stats->cos_wpsp_kp == 1.0);
  CHECK(r.kp == BinaryPattern(PatternKind::kKeyword, r.wpsp.flags()));
  CHECK(r.config.keyword_ratio == 1.0);
  CHECK(r.flags().empty());

  const auto j = to_json(r);
  CHECK(j["analyzable"] == true);
  CHECK(j["metrics"]["p_keyword_given_strong"] == 1.0);
  CHECK(j["config"]["keyword_ratio"] == 1.0);
  CHECK(j["patterns"]["KP"] == r.kp.to_string());
}

TEST_CASE("CLI layer overrides per-song metadata") {
  const fs::path dir = scratch_dir("precedence");
  write_bundle(dir, perfect_bundle("song"));
  ConfigLayer cli;
  cli.set("keyword_ratio", "0.25");
  const SongReport r = analyze_bundle(bundle_in(dir, "song"), base_config(), cli, resources());
  REQUIRE(r.analyzable);
  CHECK(r.config.keyword_ratio == 0.25);
  CHECK(r.kp.popcount() < r.wpsp.popcount());
}

TEST_CASE("song-level failures are reported by stage") {
  const fs::path dir = scratch_dir("failures");
  SUBCASE("missing lyrics") {
    write_bundle(dir, perfect_bundle("nolyrics"));
    fs::remove(dir / "nolyrics.lyrics.txt");
    const SongReport r = analyze_bundle(bundle_in(dir, "nolyrics"), base_config(), {}, resources());
    CHECK_FALSE(r.analyzable);
    CHECK(r.failed_stage == "ingest");
    CHECK(r.error.find("nolyrics.lyrics.txt") != std::string::npos);
  }
  SUBCASE("one extra annotation row") {
    write_bundle(dir, perfect_bundle("extra"));
    std::ofstream(dir / "extra.pronunables.csv", std::ios::app) << "7.9,8.0,and\n";
    const SongReport r = analyze_bundle(bundle_in(dir, "extra"), base_config(), {}, resources());
    CHECK_FALSE(r.analyzable);
    CHECK(r.failed_stage == "patterning");
    REQUIRE(r.syllables);
    CHECK(r.syllables->delta == 1);
    const auto f = r.flags();
    REQUIRE(f.size() >= 2);
    CHECK(f[0] == "unanalyzable:patterning");
    CHECK(f[1] == "syllable_delta=+1");

    ConfigLayer tolerant;
    tolerant.set("syllable_mismatch_tolerance", "1");
    const SongReport ok = analyze_bundle(bundle_in(dir, "extra"), base_config(), tolerant, resources());
    CHECK(ok.analyzable);
  }
  SUBCASE("run-level key in metadata") {
    BundleSpec spec = perfect_bundle("meta");
    spec.meta = "dict = /elsewhere\n";
    write_bundle(dir, spec);
    const SongReport r = analyze_bundle(bundle_in(dir, "meta"), base_config(), {}, resources());
    CHECK_FALSE(r.analyzable);
    CHECK(r.failed_stage == "ingest");
  }
}

TEST_CASE("batch runs") {
  SUBCASE("three fixtures") {
    const fs::path dir = scratch_dir("batch3");
    for (int i = 0; i < 3; ++i) write_bundle(dir, random_bundle("song" + std::to_string(i), 100 + i));
    const BatchResult res = run_batch(discover_bundles(dir), base_config(), {}, resources(), 2);
    CHECK(res.exit_code == kExitSuccess);
    REQUIRE(res.summary);
    CHECK(res.summary->songs == 3);
    const std::string csv = dataset_csv(res.reports);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.rfind(kDatasetCsvHeader, 0) == 0);
  }
  SUBCASE("one corrupt MIDI among three") {
    const fs::path dir = scratch_dir("corrupt");
    for (int i = 0; i < 3; ++i) write_bundle(dir, random_bundle("s" + std::to_string(i), 7 + i));
    std::ofstream(dir / "s1.mid", std::ios::binary | std::ios::trunc) << "garbage";
    const BatchResult res = run_batch(discover_bundles(dir), base_config(), {}, resources(), 3);
    CHECK(res.exit_code == kExitPartial);
    const fs::path out = dir / "out";
    write_batch_outputs(out, res.reports, res.summary ? &*res.summary : nullptr);
    CHECK(fs::exists(out / "s0.json"));
    CHECK_FALSE(fs::exists(out / "s1.json"));
    CHECK(fs::exists(out / "s2.json"));
    const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
    REQUIRE(summary["unanalyzable"].size() == 1);
    CHECK(summary["unanalyzable"][0]["song_id"] == "s1");
    CHECK(summary["unanalyzable"][0]["stage"] == "ingest");
    CHECK(fs::exists(out / "histogram.csv"));
  }
  SUBCASE("every song failing is fatal") {
    const fs::path dir = scratch_dir("allbad");
    write_bundle(dir, perfect_bundle("x"));
    std::ofstream(dir / "x.mid", std::ios::binary | std::ios::trunc) << "MThd";
    CHECK(run_batch(discover_bundles(dir), base_config(), {}, resources(), 1).exit_code == kExitFatal);
  }
  SUBCASE("empty directory") {
    const fs::path dir = scratch_dir("empty");
    CHECK(discover_bundles(dir).empty());
    CHECK_THROWS_AS(run_batch(discover_bundles(dir), base_config(), {}, resources(), 1), Error);
    CHECK_THROWS_AS(discover_bundles(dir / "missing"), Error);
  }
}

TEST_CASE("batch output does not depend on worker count") {
  const fs::path dir = scratch_dir("order");
  for (int i = 0; i < 8; ++i) write_bundle(dir, random_bundle("t" + std::to_string(i), 40 + i));
  const auto bundles = discover_bundles(dir);
  const BatchResult one = run_batch(bundles, base_config(), {}, resources(), 1);
  const BatchResult many = run_batch(bundles, base_config(), {}, resources(), 8);
  CHECK(dataset_csv(one.reports) == dataset_csv(many.reports));
  REQUIRE(one.summary);
  REQUIRE(many.summary);
  CHECK(histogram_csv(*one.summary) == histogram_csv(*many.summary));
  CHECK(to_json(*one.summary).dump() == to_json(*many.summary).dump());
}
