#include "doctest.h"
#include "lyricbeat/error.hpp"
#include "lyricbeat/midi.hpp"
#include "smf_builder.hpp"
#include "synthetic.hpp"

using namespace lyricbeat;
using namespace lyricbeat::testing;

namespace {

Bytes one_track(const TrackBuilder& t, int division = 480) { return smf(0, division, {t}); }

}  // namespace

TEST_CASE("tempo meta event is read") {
  const MidiSong song = parse_smf(one_track(TrackBuilder().tempo(0, 500000).end(480)));
  REQUIRE(song.tempo_events.size() == 1);
  CHECK(song.tempo_events[0].tick == 0);
  CHECK(song.tempo_events[0].micros_per_quarter == 500000u);
  CHECK(60e6 / song.tempo_events[0].micros_per_quarter == doctest::Approx(120.0));
}

TEST_CASE("missing tempo and meter get defaults at tick 0") {
  const MidiSong song = parse_smf(one_track(TrackBuilder().note_on(0, 0, 60).note_off(480, 0, 60).end()));
  REQUIRE(song.tempo_events.size() == 1);
  CHECK(song.tempo_events[0].tick == 0);
  CHECK(song.tempo_events[0].micros_per_quarter == kDefaultMicrosPerQuarter);
  REQUIRE(song.time_signature_events.size() == 1);
  CHECK(song.time_signature_events[0].numerator == 4);
  CHECK(song.time_signature_events[0].denominator == 4);
  CHECK(song.duration_seconds == doctest::Approx(0.5));
}

TEST_CASE("tempo set later gets a default segment before it") {
  const MidiSong song = parse_smf(one_track(TrackBuilder().tempo(480, 1000000).end(480)));
  REQUIRE(song.tempo_events.size() == 2);
  CHECK(song.tempo_events[0].micros_per_quarter == kDefaultMicrosPerQuarter);
  CHECK(song.tempo_events[1].tick == 480);
  CHECK(song.duration_seconds == doctest::Approx(1.5));
}

TEST_CASE("header errors carry byte offsets") {
  Bytes bytes = one_track(TrackBuilder().end());
  SUBCASE("bad magic") {
    bytes[0] = 'X';
    try {
      parse_smf(bytes);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset() == 0);
    }
  }
  SUBCASE("bad header length") {
    bytes[7] = 7;
    try {
      parse_smf(bytes);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset() == 4);
    }
  }
  SUBCASE("too short for a header") {
    CHECK_THROWS_AS(parse_smf(Bytes{'M', 'T'}), ParseError);
  }
}

TEST_CASE("truncated track is a parse error") {
  Bytes bytes = one_track(TrackBuilder().tempo(0, 500000).note_on(0, 0, 60).end(10));
  SUBCASE("chunk length beyond file") {
    bytes.resize(bytes.size() - 3);
    CHECK_THROWS_AS(parse_smf(bytes), ParseError);
  }
  SUBCASE("event cut inside the chunk") {
    // Shrink the declared length so the chunk ends mid-event.
    bytes[21] = static_cast<std::uint8_t>(bytes[21] - 3);
    bytes.resize(bytes.size() - 3);
    CHECK_THROWS_AS(parse_smf(bytes), ParseError);
  }
  SUBCASE("missing declared track") {
    Bytes two = header(1, 2, 480);
    Bytes c = TrackBuilder().end().chunk();
    two.insert(two.end(), c.begin(), c.end());
    CHECK_THROWS_AS(parse_smf(two), ParseError);
  }
}

TEST_CASE("unsupported formats") {
  CHECK_THROWS_AS(parse_smf(smf(2, 480, {TrackBuilder().end()})), UnsupportedFormatError);
  CHECK_THROWS_AS(parse_smf(smf(0, 0xE728, {TrackBuilder().end()})), UnsupportedFormatError);
  CHECK_THROWS_AS(parse_smf(smf(3, 480, {TrackBuilder().end()})), ParseError);
}

TEST_CASE("running status and its cancellation") {
  SUBCASE("notes under running status") {
    TrackBuilder t;
    t.raw(0, {0x90, 60, 100}).raw(240, {62, 100}).raw(240, {60, 0}).raw(240, {62, 0}).end();
    const MidiSong song = parse_smf(one_track(t));
    REQUIRE(song.notes.size() == 2);
    CHECK(song.notes[0].pitch == 60);
    CHECK(song.notes[0].start_seconds == doctest::Approx(0.0));
    CHECK(song.notes[0].end_seconds == doctest::Approx(0.5));
    CHECK(song.notes[1].pitch == 62);
    CHECK(song.notes[1].end_seconds == doctest::Approx(0.75));
  }
  SUBCASE("meta event cancels running status") {
    TrackBuilder t;
    t.raw(0, {0x90, 60, 100}).tempo(0, 500000).raw(0, {62, 100}).end();
    CHECK_THROWS_AS(parse_smf(one_track(t)), ParseError);
  }
  SUBCASE("sysex is skipped and cancels running status") {
    TrackBuilder ok;
    ok.raw(0, {0xF0, 0x03, 0x7E, 0x09, 0xF7}).note_on(0, 0, 60).note_off(480, 0, 60).end();
    CHECK(parse_smf(one_track(ok)).notes.size() == 1);
    TrackBuilder bad;
    bad.raw(0, {0x90, 60, 100}).raw(0, {0xF0, 0x01, 0xF7}).raw(0, {60, 0}).end();
    CHECK_THROWS_AS(parse_smf(one_track(bad)), ParseError);
  }
  SUBCASE("program change takes one data byte") {
    TrackBuilder t;
    t.raw(0, {0xC0, 5}).note_on(0, 0, 60).note_off(480, 0, 60).end();
    CHECK(parse_smf(one_track(t)).notes.size() == 1);
  }
}

TEST_CASE("last tempo at a tick wins across tracks in track order") {
  TrackBuilder a;
  a.tempo(0, 400000).end(960);
  TrackBuilder b;
  b.tempo(0, 600000).end();
  const MidiSong song = parse_smf(smf(1, 480, {a, b}));
  REQUIRE(song.tempo_events.size() == 1);
  CHECK(song.tempo_events[0].micros_per_quarter == 600000u);
}

TEST_CASE("ticks_to_seconds") {
  MidiSong song;
  song.ticks_per_quarter = 480;
  song.tempo_events = {{0, 500000}};
  CHECK(ticks_to_seconds(song, 0) == 0.0);
  CHECK(ticks_to_seconds(song, 480) == doctest::Approx(0.5));

  song.tempo_events = {{0, 500000}, {480, 1000000}};
  CHECK(ticks_to_seconds(song, 960) == doctest::Approx(1.5));
  CHECK(seconds_to_ticks(song, 1.5) == doctest::Approx(960));
  CHECK(seconds_to_ticks(song, 0.25) == doctest::Approx(240));

  for (double tick : {0.0, 13.0, 479.0, 480.0, 481.0, 5000.0})
    CHECK(seconds_to_ticks(song, ticks_to_seconds(song, tick)) == doctest::Approx(tick));
}

TEST_CASE("synthetic fixture round trip") {
  const MidiSong song = constant_tempo_song(micros_per_quarter_for(0.5, 8), 6, 8, 12);
  CHECK(song.format == 1);
  CHECK(song.notes.size() == 12);
  CHECK(song.time_signature_events[0].numerator == 6);
  CHECK(song.time_signature_events[0].denominator == 8);
  CHECK(song.duration_seconds == doctest::Approx(6.0));
}

TEST_CASE("unterminated note closes at end of track") {
  const MidiSong song = parse_smf(one_track(TrackBuilder().note_on(0, 0, 60).end(960)));
  REQUIRE(song.notes.size() == 1);
  CHECK(song.notes[0].end_seconds == doctest::Approx(1.0));
}
