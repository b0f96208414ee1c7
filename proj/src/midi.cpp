#include "lyricbeat/midi.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <iterator>
#include <map>
#include <string>
#include <tuple>
#include <utility>

#include "lyricbeat/error.hpp"

namespace lyricbeat {

namespace {

class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> bytes, std::size_t base, const char* what)
      : bytes_(bytes), base_(base), what_(what) {}

  std::size_t offset() const { return base_ + pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }

  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }

  std::uint8_t peek() {
    need(1);
    return bytes_[pos_];
  }

  std::uint32_t be(int n) {
    need(static_cast<std::size_t>(n));
    std::uint32_t v = 0;
    for (int i = 0; i < n; ++i) v = (v << 8) | bytes_[pos_++];
    return v;
  }

  // Variable-length quantity, at most four bytes.
  std::uint32_t vlq() {
    const std::size_t start = offset();
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      const std::uint8_t b = u8();
      v = (v << 7) | (b & 0x7f);
      if ((b & 0x80) == 0) return v;
    }
    throw ParseError("variable-length quantity longer than 4 bytes", start);
  }

  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  void need(std::size_t n) {
    if (bytes_.size() - pos_ < n)
      throw ParseError(std::string("truncated ") + what_, offset());
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t base_;
  std::size_t pos_ = 0;
  const char* what_;
};

struct TickNote {
  int pitch;
  int channel;
  std::int64_t start;
  std::int64_t end;
};

struct RawTrack {
  std::vector<TempoEvent> tempos;
  std::vector<TimeSignatureEvent> meters;
  std::vector<TickNote> notes;
  std::int64_t end_tick = 0;
};

int channel_data_length(std::uint8_t status) {
  switch (status & 0xf0) {
    case 0xc0:
    case 0xd0:
      return 1;
    default:
      return 2;
  }
}

RawTrack parse_track(std::span<const std::uint8_t> data, std::size_t base) {
  ByteReader in(data, base, "track");
  RawTrack track;
  std::map<std::pair<int, int>, std::deque<std::int64_t>> open;
  std::int64_t tick = 0;
  std::uint8_t running = 0;

  auto close_note = [&](int channel, int pitch) {
    auto it = open.find({channel, pitch});
    if (it == open.end() || it->second.empty()) return;
    track.notes.push_back({pitch, channel, it->second.front(), tick});
    it->second.pop_front();
  };

  while (!in.at_end()) {
    tick += in.vlq();
    const std::size_t event_offset = in.offset();
    std::uint8_t status = in.peek();
    if (status & 0x80) {
      in.u8();
    } else if (running != 0) {
      status = running;
    } else {
      throw ParseError("data byte without running status", event_offset);
    }

    if (status == 0xff) {
      running = 0;
      const std::uint8_t type = in.u8();
      const std::uint32_t len = in.vlq();
      auto payload = in.take(len);
      if (type == 0x51) {
        if (len < 3) throw ParseError("short tempo meta event", event_offset);
        const std::uint32_t us = (std::uint32_t{payload[0]} << 16) |
                                 (std::uint32_t{payload[1]} << 8) | payload[2];
        if (us == 0) throw ParseError("zero tempo", event_offset);
        track.tempos.push_back({tick, us});
      } else if (type == 0x58) {
        if (len < 2) throw ParseError("short time signature meta event", event_offset);
        if (payload[0] == 0 || payload[1] > 5)
          throw ParseError("invalid time signature", event_offset);
        track.meters.push_back({tick, payload[0], 1 << payload[1]});
      } else if (type == 0x2f) {
        break;
      }
    } else if (status == 0xf0 || status == 0xf7) {
      running = 0;
      in.take(in.vlq());
    } else if (status >= 0xf1) {
      // System common/real-time bytes are not legal in a file; skip their
      // nominal payload.
      running = 0;
      if (status == 0xf2) in.take(2);
      else if (status == 0xf1 || status == 0xf3) in.take(1);
    } else {
      running = status;
      const int channel = status & 0x0f;
      const std::uint8_t d0 = in.u8();
      const std::uint8_t d1 = channel_data_length(status) == 2 ? in.u8() : 0;
      if ((d0 & 0x80) || (d1 & 0x80))
        throw ParseError("status byte inside channel message", event_offset);
      const int type = status & 0xf0;
      if (type == 0x90 && d1 > 0) {
        open[{channel, d0}].push_back(tick);
      } else if (type == 0x80 || type == 0x90) {
        close_note(channel, d0);
      }
    }
  }

  track.end_tick = tick;
  for (auto& [key, starts] : open) {
    for (std::int64_t start : starts)
      track.notes.push_back({key.second, key.first, start, tick});
  }
  return track;
}

// Stable-sorts by tick and keeps the last event at each tick.
template <typename Event>
std::vector<Event> last_per_tick(std::vector<Event> events) {
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.tick < b.tick; });
  std::vector<Event> out;
  for (const Event& e : events) {
    if (!out.empty() && out.back().tick == e.tick) out.back() = e;
    else out.push_back(e);
  }
  return out;
}

}  // namespace

MidiSong parse_smf(std::span<const std::uint8_t> bytes) {
  ByteReader header(bytes, 0, "header chunk");
  static constexpr std::uint8_t kMThd[] = {'M', 'T', 'h', 'd'};
  if (bytes.size() < 4 || !std::equal(std::begin(kMThd), std::end(kMThd), bytes.begin()))
    throw ParseError("missing MThd header", 0);
  header.take(4);
  if (header.be(4) != 6) throw ParseError("header chunk length is not 6", 4);

  MidiSong song;
  song.format = static_cast<int>(header.be(2));
  const std::uint32_t declared_tracks = header.be(2);
  const std::uint32_t division = header.be(2);
  if (song.format == 2) throw UnsupportedFormatError("SMF format 2 is not supported");
  if (song.format > 2) throw ParseError("unknown SMF format " + std::to_string(song.format), 8);
  if (division & 0x8000) throw UnsupportedFormatError("SMPTE time division is not supported");
  if (division == 0) throw ParseError("zero ticks per quarter note", 12);
  song.ticks_per_quarter = static_cast<int>(division);

  std::vector<RawTrack> tracks;
  std::size_t pos = 14;
  while (bytes.size() - pos >= 8) {
    ByteReader chunk(bytes.subspan(pos), pos, "chunk");
    auto id = chunk.take(4);
    const std::uint32_t len = chunk.be(4);
    if (bytes.size() - pos - 8 < len) throw ParseError("truncated chunk", pos);
    if (std::equal(id.begin(), id.end(), "MTrk"))
      tracks.push_back(parse_track(bytes.subspan(pos + 8, len), pos + 8));
    pos += 8 + static_cast<std::size_t>(len);
  }
  if (tracks.size() < declared_tracks)
    throw ParseError("header declares " + std::to_string(declared_tracks) +
                         " tracks, found " + std::to_string(tracks.size()),
                     pos);

  std::vector<TempoEvent> tempos;
  std::vector<TimeSignatureEvent> meters;
  std::vector<TickNote> notes;
  for (const RawTrack& t : tracks) {
    tempos.insert(tempos.end(), t.tempos.begin(), t.tempos.end());
    meters.insert(meters.end(), t.meters.begin(), t.meters.end());
    notes.insert(notes.end(), t.notes.begin(), t.notes.end());
    song.end_tick = std::max(song.end_tick, t.end_tick);
  }

  song.tempo_events = last_per_tick(std::move(tempos));
  if (song.tempo_events.empty() || song.tempo_events.front().tick != 0)
    song.tempo_events.insert(song.tempo_events.begin(), TempoEvent{});
  song.time_signature_events = last_per_tick(std::move(meters));
  if (song.time_signature_events.empty() || song.time_signature_events.front().tick != 0)
    song.time_signature_events.insert(song.time_signature_events.begin(), TimeSignatureEvent{});

  std::sort(notes.begin(), notes.end(), [](const TickNote& a, const TickNote& b) {
    return std::tie(a.start, a.pitch, a.channel, a.end) <
           std::tie(b.start, b.pitch, b.channel, b.end);
  });
  song.notes.reserve(notes.size());
  for (const TickNote& n : notes) {
    song.notes.push_back({n.pitch, n.channel,
                          ticks_to_seconds(song, static_cast<double>(n.start)),
                          ticks_to_seconds(song, static_cast<double>(n.end))});
  }
  song.duration_seconds = ticks_to_seconds(song, static_cast<double>(song.end_tick));
  return song;
}

MidiSong read_smf_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open MIDI file " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return parse_smf(bytes);
}

double ticks_to_seconds(const MidiSong& song, double tick) {
  if (tick <= 0.0) return 0.0;
  const double tpq = song.ticks_per_quarter;
  double seconds = 0.0;
  double prev_tick = 0.0;
  double us = kDefaultMicrosPerQuarter;
  for (const TempoEvent& e : song.tempo_events) {
    const double t = static_cast<double>(e.tick);
    if (t >= tick) break;
    seconds += (t - prev_tick) * us / (tpq * 1e6);
    prev_tick = t;
    us = e.micros_per_quarter;
  }
  return seconds + (tick - prev_tick) * us / (tpq * 1e6);
}

double seconds_to_ticks(const MidiSong& song, double seconds) {
  if (seconds <= 0.0) return 0.0;
  const double tpq = song.ticks_per_quarter;
  double elapsed = 0.0;
  double prev_tick = 0.0;
  double us = kDefaultMicrosPerQuarter;
  for (const TempoEvent& e : song.tempo_events) {
    const double t = static_cast<double>(e.tick);
    const double segment = (t - prev_tick) * us / (tpq * 1e6);
    if (elapsed + segment >= seconds) break;
    elapsed += segment;
    prev_tick = t;
    us = e.micros_per_quarter;
  }
  return prev_tick + (seconds - elapsed) * tpq * 1e6 / us;
}

}  // namespace lyricbeat
