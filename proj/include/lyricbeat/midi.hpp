#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace lyricbeat {

inline constexpr std::uint32_t kDefaultMicrosPerQuarter = 500000;

struct TempoEvent {
  std::int64_t tick = 0;
  std::uint32_t micros_per_quarter = kDefaultMicrosPerQuarter;

  friend bool operator==(const TempoEvent&, const TempoEvent&) = default;
};

struct TimeSignatureEvent {
  std::int64_t tick = 0;
  int numerator = 4;
  int denominator = 4;

  friend bool operator==(const TimeSignatureEvent&, const TimeSignatureEvent&) = default;
};

struct Note {
  int pitch = 0;
  int channel = 0;
  double start_seconds = 0.0;
  double end_seconds = 0.0;

  friend bool operator==(const Note&, const Note&) = default;
};

/// The parts of a Standard MIDI File needed to lay out a beat grid.
///
/// Both event lists are sorted with strictly increasing ticks and always
/// start at tick 0: parsing injects 120 BPM and 4/4 defaults when the file
/// leaves the opening of the song unspecified.
struct MidiSong {
  int format = 0;
  int ticks_per_quarter = 480;
  std::vector<TempoEvent> tempo_events;
  std::vector<TimeSignatureEvent> time_signature_events;
  std::vector<Note> notes;  // ordered by start time, then pitch
  std::int64_t end_tick = 0;
  double duration_seconds = 0.0;

  friend bool operator==(const MidiSong&, const MidiSong&) = default;
};

/// Parses a format 0 or format 1 SMF.
///
/// Throws ParseError (with the byte offset of the fault) on malformed or
/// truncated input and UnsupportedFormatError for format 2 files and SMPTE
/// time division.
MidiSong parse_smf(std::span<const std::uint8_t> bytes);

MidiSong read_smf_file(const std::filesystem::path& path);

/// Seconds elapsed at `tick`, integrating the tempo map. Ticks past the last
/// tempo event run at the last tempo. Fractional ticks are allowed.
double ticks_to_seconds(const MidiSong& song, double tick);

/// Inverse of ticks_to_seconds. Returns fractional ticks.
double seconds_to_ticks(const MidiSong& song, double seconds);

}  // namespace lyricbeat
