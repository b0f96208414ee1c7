#include "lyricbeat/annotations.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "lyricbeat/error.hpp"

namespace lyricbeat {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  fields.push_back(trim(field));
  return fields;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

PronunableColumns parse_column_mapping(const std::string& spec) {
  PronunableColumns columns;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw PreconditionError("column mapping entry '" + item + "' is not key=column");
    const std::string key = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    if (key == "start") columns.start = value;
    else if (key == "end") columns.end = value;
    else if (key == "label") columns.label = value;
    else throw PreconditionError("unknown column mapping key '" + key + "'");
  }
  return columns;
}

VocalBeats read_vocal_beats(std::istream& in) {
  VocalBeats vocal;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto v = to_double(t);
    if (!v) throw ParseError("not a timestamp: '" + t + "'", line_no);
    vocal.times.push_back(*v);
  }
  validate(vocal);
  return vocal;
}

VocalBeats read_vocal_beats(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_vocal_beats(in);
}

PronunableTrack read_pronunables(std::istream& in, const PronunableColumns& columns) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!trim(line).empty()) header = split_csv_line(line, line_no);
  }
  if (header.empty()) throw ParseError("pronunable CSV has no header row", line_no);

  auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto start_col = column(columns.start);
  const auto end_col = column(columns.end);
  const auto label_col = column(columns.label);
  if (!start_col || !end_col)
    throw ParseError("pronunable CSV header lacks '" + columns.start + "' or '" + columns.end +
                         "' column",
                     line_no);

  PronunableTrack track;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line, line_no);
    const std::size_t needed = std::max(*start_col, *end_col) + 1;
    if (fields.size() < needed) throw ParseError("too few fields", line_no);
    const auto start = to_double(fields[*start_col]);
    const auto end = to_double(fields[*end_col]);
    if (!start || !end) throw ParseError("non-numeric start or end time", line_no);
    Pronunable p{*start, *end, {}};
    if (label_col && *label_col < fields.size()) p.label = fields[*label_col];
    track.events.push_back(std::move(p));
  }
  validate(track);
  return track;
}

PronunableTrack read_pronunables(const std::filesystem::path& path,
                                 const PronunableColumns& columns) {
  auto in = open_or_throw(path);
  return read_pronunables(in, columns);
}

std::string read_text_file(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lyricbeat
