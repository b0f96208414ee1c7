#include "lyricbeat/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "lyricbeat/error.hpp"

namespace lyricbeat {

namespace {

// Index into `times` of the nearest entry within [t - dt, t + dt], earlier
// entry on ties.
std::optional<std::size_t> nearest_within(std::span<const double> times, double t, double dt) {
  auto it = std::lower_bound(times.begin(), times.end(), t - dt);
  std::optional<std::size_t> best;
  double best_distance = 0.0;
  for (; it != times.end() && *it <= t + dt; ++it) {
    const double d = manhattan_distance(std::span(&*it, 1), std::span(&t, 1));
    if (!best || d < best_distance) {
      best = static_cast<std::size_t>(it - times.begin());
      best_distance = d;
    }
  }
  return best;
}

// Fills unresolved entries by linear interpolation over `positions` between
// the nearest resolved neighbours, clamps to the grid and repairs
// monotonicity.
void fill_unresolved(std::vector<long>& indices, const std::vector<bool>& resolved,
                     std::span<const double> positions, long beat_count) {
  const std::size_t n = indices.size();
  std::optional<std::size_t> prev;
  std::vector<std::optional<std::size_t>> next(n);
  for (std::size_t k = n; k-- > 0;) {
    if (k + 1 < n) next[k] = resolved[k + 1] ? std::optional(k + 1) : next[k + 1];
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (resolved[k]) {
      prev = k;
      continue;
    }
    const auto after = next[k];
    if (prev && after) {
      const long lo = indices[*prev];
      const long hi = indices[*after];
      const double span = positions[*after] - positions[*prev];
      long value = lo;
      if (span > 0.0) {
        const double frac = (positions[k] - positions[*prev]) / span;
        value = std::lround(static_cast<double>(lo) + static_cast<double>(hi - lo) * frac);
      }
      indices[k] = std::clamp(value, std::min(lo, hi), std::max(lo, hi));
    } else if (prev) {
      indices[k] = indices[*prev];
    } else if (after) {
      indices[k] = indices[*after];
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    indices[k] = std::clamp(indices[k], 0L, beat_count - 1);
    if (k > 0 && indices[k] < indices[k - 1]) indices[k] = indices[k - 1];
  }
}

void check_buffer(TimeBuffer buf) {
  if (!(buf.dt > 0.0) || !std::isfinite(buf.dt))
    throw PreconditionError("time buffer must be positive");
}

}  // namespace

void validate(const VocalBeats& vocal) {
  for (std::size_t i = 0; i < vocal.times.size(); ++i) {
    if (!(vocal.times[i] >= 0.0) || !std::isfinite(vocal.times[i]))
      throw PreconditionError("vocal beat " + std::to_string(i) + " is negative or not finite");
    if (i > 0 && vocal.times[i] <= vocal.times[i - 1])
      throw PreconditionError("vocal beats must be strictly increasing (beat " +
                              std::to_string(i) + ")");
  }
}

std::vector<double> PronunableTrack::start_times() const {
  std::vector<double> starts;
  starts.reserve(events.size());
  for (const auto& e : events) starts.push_back(e.start_seconds);
  return starts;
}

void validate(const PronunableTrack& track) {
  for (std::size_t i = 0; i < track.events.size(); ++i) {
    const auto& e = track.events[i];
    if (!std::isfinite(e.start_seconds) || !std::isfinite(e.end_seconds))
      throw PreconditionError("pronunable " + std::to_string(i) + " has a non-finite time");
    if (e.end_seconds < e.start_seconds)
      throw PreconditionError("pronunable " + std::to_string(i) + " ends before it starts");
    if (i > 0 && e.start_seconds < track.events[i - 1].start_seconds)
      throw PreconditionError("pronunable starts must be non-decreasing (event " +
                              std::to_string(i) + ")");
  }
}

std::size_t AlignmentIndexMap::interpolated_count() const {
  return static_cast<std::size_t>(std::count(interpolated.begin(), interpolated.end(), true));
}

TimeBuffer default_buffer(const BeatGrid& grid, double fraction) {
  if (grid.size() < 2)
    throw PreconditionError("time buffer needs a grid with at least two beats");
  if (!(fraction > 0.0) || !std::isfinite(fraction))
    throw PreconditionError("buffer fraction must be positive");
  std::vector<double> gaps;
  gaps.reserve(grid.size() - 1);
  for (std::size_t i = 1; i < grid.size(); ++i)
    gaps.push_back(grid.beat_times[i] - grid.beat_times[i - 1]);
  const std::size_t mid = gaps.size() / 2;
  std::nth_element(gaps.begin(), gaps.begin() + static_cast<long>(mid), gaps.end());
  double median = gaps[mid];
  if (gaps.size() % 2 == 0) {
    const double lower = *std::max_element(gaps.begin(), gaps.begin() + static_cast<long>(mid));
    median = (median + lower) / 2.0;
  }
  return TimeBuffer{fraction * median};
}

double manhattan_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw PreconditionError("manhattan_distance: dimension mismatch (" +
                            std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

AlignmentIndexMap align_vocal_to_music(const VocalBeats& vocal, const BeatGrid& grid,
                                       TimeBuffer buf) {
  if (vocal.times.empty() || grid.empty())
    throw PreconditionError("alignment needs non-empty vocal beats and beat grid");
  check_buffer(buf);

  const std::size_t n = vocal.times.size();
  AlignmentIndexMap map{std::vector<long>(n, 0), std::vector<bool>(n, false)};
  std::vector<bool> resolved(n, false);
  bool any = false;
  for (std::size_t k = 0; k < n; ++k) {
    if (auto beat = nearest_within(grid.beat_times, vocal.times[k], buf.dt)) {
      map.indices[k] = static_cast<long>(*beat);
      resolved[k] = true;
      any = true;
    } else {
      map.interpolated[k] = true;
    }
  }
  if (!any) throw AlignmentError("no vocal beat falls within the time buffer of any music beat");
  fill_unresolved(map.indices, resolved, vocal.times, static_cast<long>(grid.size()));
  return map;
}

AlignmentIndexMap locate_pronunables(const PronunableTrack& pronunables, const VocalBeats& vocal,
                                     const AlignmentIndexMap& vocal_to_music, TimeBuffer buf,
                                     const BeatGrid& grid) {
  if (pronunables.empty()) return {};
  if (vocal.times.empty() || grid.empty())
    throw PreconditionError("pronunable locating needs non-empty vocal beats and beat grid");
  check_buffer(buf);

  const std::vector<double> starts = pronunables.start_times();
  const std::size_t n = starts.size();
  AlignmentIndexMap located{std::vector<long>(n, 0), std::vector<bool>(n, false)};
  std::vector<bool> resolved(n, false);
  bool any = false;
  for (std::size_t k = 0; k < n; ++k) {
    const auto vocal_index = nearest_within(vocal.times, starts[k], buf.dt);
    if (vocal_index && *vocal_index < vocal_to_music.size()) {
      located.indices[k] = vocal_to_music.indices[*vocal_index];
      resolved[k] = true;
      any = true;
    } else {
      located.interpolated[k] = true;
    }
  }
  if (!any) throw AlignmentError("no pronunable falls within the time buffer of a vocal beat");
  fill_unresolved(located.indices, resolved, starts, static_cast<long>(grid.size()));
  return located;
}

}  // namespace lyricbeat
