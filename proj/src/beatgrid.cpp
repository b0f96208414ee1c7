#include "lyricbeat/beatgrid.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>

#include "lyricbeat/error.hpp"

namespace lyricbeat {

namespace {

constexpr double kTimeEpsilon = 1e-9;

std::vector<int> group_starts(const std::vector<int>& grouping) {
  std::vector<int> starts;
  int pos = 0;
  for (int g : grouping) {
    starts.push_back(pos);
    pos += g;
  }
  return starts;
}

std::vector<int> odd_meter_grouping(int numerator) {
  if (numerator == 5) return {3, 2};
  std::vector<int> groups(static_cast<std::size_t>((numerator - 3) / 2), 2);
  groups.push_back(3);
  return groups;
}

int parse_int(std::string_view s, std::string_view entry) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw PreconditionError("malformed meter grouping '" + std::string(entry) + "'");
  return value;
}

}  // namespace

void validate(const TimeSignature& ts) {
  if (ts.numerator <= 0)
    throw PreconditionError("time signature numerator must be positive");
  if (ts.denominator < 1 || ts.denominator > 32 || (ts.denominator & (ts.denominator - 1)) != 0)
    throw PreconditionError("time signature denominator must be a power of two in [1, 32]");
  if (ts.grouping.empty()) return;
  if (std::accumulate(ts.grouping.begin(), ts.grouping.end(), 0) != ts.numerator)
    throw PreconditionError("meter grouping must sum to the numerator of " + to_string(ts));
  for (std::size_t i = 0; i < ts.grouping.size(); ++i) {
    const int g = ts.grouping[i];
    if (g < 1 || (g < 2 && i + 1 != ts.grouping.size()))
      throw PreconditionError("meter groups must be at least 2 beats (except the last) in " +
                              to_string(ts));
  }
}

std::string to_string(const TimeSignature& ts) {
  std::string s = std::to_string(ts.numerator) + "/" + std::to_string(ts.denominator);
  for (std::size_t i = 0; i < ts.grouping.size(); ++i)
    s += (i == 0 ? ":" : "+") + std::to_string(ts.grouping[i]);
  return s;
}

std::vector<int> strong_beat_positions(const TimeSignature& ts) {
  validate(ts);
  const int n = ts.numerator;
  if (!ts.grouping.empty()) return group_starts(ts.grouping);
  if (n <= 3) return {0};
  if (n == 4) return {0, 2};
  std::vector<int> positions;
  if (n % 3 == 0) {
    for (int p = 0; p < n; p += 3) positions.push_back(p);
    return positions;
  }
  if (n % 2 == 0) return {0, n / 2};
  return group_starts(odd_meter_grouping(n));
}

bool is_reference_meter(const TimeSignature& ts) {
  return ts.grouping.empty() && ts.denominator == 4 && (ts.numerator == 2 || ts.numerator == 4);
}

MeterGroupings MeterGroupings::defaults() {
  MeterGroupings g;
  g.set(5, 8, {3, 2});
  g.set(7, 8, {2, 2, 3});
  return g;
}

std::pair<std::pair<int, int>, std::vector<int>> MeterGroupings::parse_entry(
    std::string_view entry) {
  const auto slash = entry.find('/');
  const auto colon = entry.find(':');
  if (slash == std::string_view::npos || colon == std::string_view::npos || colon < slash)
    throw PreconditionError("malformed meter grouping '" + std::string(entry) +
                            "', expected N/D:g1+g2+...");
  const int num = parse_int(entry.substr(0, slash), entry);
  const int den = parse_int(entry.substr(slash + 1, colon - slash - 1), entry);
  std::vector<int> groups;
  std::string_view rest = entry.substr(colon + 1);
  while (true) {
    const auto plus = rest.find('+');
    groups.push_back(parse_int(rest.substr(0, plus), entry));
    if (plus == std::string_view::npos) break;
    rest = rest.substr(plus + 1);
  }
  validate(TimeSignature{num, den, groups});
  return {{num, den}, std::move(groups)};
}

void MeterGroupings::set(int numerator, int denominator, std::vector<int> grouping) {
  validate(TimeSignature{numerator, denominator, grouping});
  entries_[{numerator, denominator}] = std::move(grouping);
}

void MeterGroupings::set(std::string_view entry) {
  auto [key, groups] = parse_entry(entry);
  entries_[key] = std::move(groups);
}

std::optional<std::vector<int>> MeterGroupings::find(int numerator, int denominator) const {
  auto it = entries_.find({numerator, denominator});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool BeatGrid::uses_meter_convention() const {
  return std::any_of(segments.begin(), segments.end(),
                     [](const MeterSegment& s) { return !is_reference_meter(s.meter); });
}

BeatGrid build_beat_grid(const MidiSong& song, const MeterGroupings& groupings) {
  if (song.tempo_events.empty() || song.time_signature_events.empty())
    throw PreconditionError("song has no tempo or time signature events");

  BeatGrid grid;
  const double duration = song.duration_seconds;
  const auto& meters = song.time_signature_events;
  grid.beats_per_measure = meters.front().numerator;

  for (std::size_t m = 0; m < meters.size(); ++m) {
    const auto& event = meters[m];
    const double segment_end = m + 1 < meters.size()
                                   ? static_cast<double>(meters[m + 1].tick)
                                   : std::numeric_limits<double>::infinity();
    TimeSignature ts{event.numerator, event.denominator, {}};
    if (auto g = groupings.find(ts.numerator, ts.denominator)) ts.grouping = *g;

    MeterSegment segment{event.tick, grid.beat_times.size(), ts, strong_beat_positions(ts)};
    const double ticks_per_beat = song.ticks_per_quarter * 4.0 / ts.denominator;
    bool past_end = false;
    for (long k = 0;; ++k) {
      const double tick = static_cast<double>(event.tick) + static_cast<double>(k) * ticks_per_beat;
      if (tick >= segment_end - kTimeEpsilon) break;
      const double t = ticks_to_seconds(song, tick);
      if (t >= duration - kTimeEpsilon) {
        past_end = true;
        break;
      }
      const int pos = static_cast<int>(k % ts.numerator);
      if (pos == 0) grid.measure_offsets.push_back(grid.beat_times.size());
      grid.beat_times.push_back(t);
      grid.sp.push_back(std::binary_search(segment.strong_positions.begin(),
                                           segment.strong_positions.end(), pos));
    }
    if (segment.first_beat < grid.beat_times.size())
      grid.segments.push_back(std::move(segment));
    if (past_end) break;
  }
  return grid;
}

}  // namespace lyricbeat
