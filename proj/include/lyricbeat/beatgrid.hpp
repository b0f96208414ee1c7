#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lyricbeat/binary_pattern.hpp"
#include "lyricbeat/midi.hpp"

namespace lyricbeat {

/// A meter. `grouping` splits the measure into beat groups for asymmetric
/// meters, e.g. 7/8 as 2+2+3; it is empty for simple and compound meters.
struct TimeSignature {
  int numerator = 4;
  int denominator = 4;
  std::vector<int> grouping;

  friend bool operator==(const TimeSignature&, const TimeSignature&) = default;
};

/// Throws PreconditionError unless the denominator is in {1,...,32}, a power
/// of two, and a non-empty grouping sums to the numerator with every group but
/// the last at least 2.
void validate(const TimeSignature& ts);

std::string to_string(const TimeSignature& ts);

/// 0-based strong positions within one measure, counted in denominator
/// pulses. Position 0 (the downbeat) is always present.
///
///   explicit grouping       group starts (cumulative sums)
///   numerator 1, 2 or 3     {0}
///   numerator 4             {0, 2}
///   multiple of 3 (6,9,..)  every third pulse (compound meter)
///   other even numerator    {0, n/2}
///   5 without grouping      3+2
///   other odd numerator     2+2+...+3
std::vector<int> strong_beat_positions(const TimeSignature& ts);

/// True for the two meters whose strong beats are taken as given (2/4 and
/// 4/4); every other meter relies on the table above.
bool is_reference_meter(const TimeSignature& ts);

/// Per-meter grouping overrides keyed by (numerator, denominator).
class MeterGroupings {
 public:
  /// 5/8 as 3+2 and 7/8 as 2+2+3.
  static MeterGroupings defaults();

  /// Parses "<numerator>/<denominator>:<g1+g2+...>", e.g. "7/8:3+2+2".
  static std::pair<std::pair<int, int>, std::vector<int>> parse_entry(std::string_view entry);

  void set(int numerator, int denominator, std::vector<int> grouping);
  void set(std::string_view entry);
  std::optional<std::vector<int>> find(int numerator, int denominator) const;

  const std::map<std::pair<int, int>, std::vector<int>>& entries() const { return entries_; }

 private:
  std::map<std::pair<int, int>, std::vector<int>> entries_;
};

/// One constant-meter stretch of the grid.
struct MeterSegment {
  std::int64_t start_tick = 0;
  std::size_t first_beat = 0;
  TimeSignature meter;
  std::vector<int> strong_positions;
};

/// Timestamped music beats with per-beat strong flags (the SP pattern).
struct BeatGrid {
  std::vector<double> beat_times;
  int beats_per_measure = 0;
  BinaryPattern sp{PatternKind::kStrongBeat};
  std::vector<std::size_t> measure_offsets;
  std::vector<MeterSegment> segments;

  std::size_t size() const noexcept { return beat_times.size(); }
  bool empty() const noexcept { return beat_times.empty(); }

  /// True when some segment uses a meter other than 2/4 or 4/4.
  bool uses_meter_convention() const;
};

/// One beat per denominator pulse over [0, duration). Measures restart at
/// every time signature change; rest periods get beats like everything else.
BeatGrid build_beat_grid(const MidiSong& song,
                         const MeterGroupings& groupings = MeterGroupings::defaults());

}  // namespace lyricbeat
