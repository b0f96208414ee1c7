#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lyricbeat/beatgrid.hpp"

namespace lyricbeat {

/// Tracked vocal beat onsets in seconds, strictly increasing and non-negative.
struct VocalBeats {
  std::vector<double> times;
};

/// Throws PreconditionError if the series is not strictly increasing or has
/// negative times.
void validate(const VocalBeats& vocal);

struct Pronunable {
  double start_seconds = 0.0;
  double end_seconds = 0.0;
  std::string label;
};

/// Sung pronunciation changes in performance order.
struct PronunableTrack {
  std::vector<Pronunable> events;

  std::size_t size() const noexcept { return events.size(); }
  bool empty() const noexcept { return events.empty(); }
  std::vector<double> start_times() const;
};

void validate(const PronunableTrack& track);

/// Music-beat index for each event of a source series.
struct AlignmentIndexMap {
  std::vector<long> indices;
  std::vector<bool> interpolated;

  std::size_t size() const noexcept { return indices.size(); }
  bool empty() const noexcept { return indices.empty(); }
  std::size_t interpolated_count() const;
};

/// Half-width of the search window around an event, in seconds.
struct TimeBuffer {
  double dt = 0.0;
};

inline constexpr double kDefaultBufferFraction = 0.5;

/// `fraction` times the median inter-beat interval of the grid. Needs at
/// least two beats.
TimeBuffer default_buffer(const BeatGrid& grid, double fraction = kDefaultBufferFraction);

/// Sum of absolute coordinate differences.
double manhattan_distance(std::span<const double> a, std::span<const double> b);

/// Maps every vocal beat to the nearest music beat within ±dt, earlier beat
/// on ties. Vocal beats without a candidate are interpolated from their
/// resolved neighbours, and the result is made non-decreasing. Throws
/// AlignmentError when nothing resolves.
AlignmentIndexMap align_vocal_to_music(const VocalBeats& vocal, const BeatGrid& grid,
                                       TimeBuffer buf);

/// Places each pronunable on a music beat.
///
/// For a pronunable starting at t, the vocal beats within [t - dt, t + dt]
/// are found by binary search and the closest one (Manhattan distance,
/// earlier on ties) is mapped through `vocal_to_music`. Pronunables with no
/// candidate are filled by linear interpolation in time between the nearest
/// resolved pronunables before and after, rounded to the nearest beat;
/// leading and trailing gaps take the nearest resolved index. Finally any
/// index below its predecessor is raised to it.
AlignmentIndexMap locate_pronunables(const PronunableTrack& pronunables, const VocalBeats& vocal,
                                     const AlignmentIndexMap& vocal_to_music, TimeBuffer buf,
                                     const BeatGrid& grid);

}  // namespace lyricbeat
