#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "lyricbeat/alignment.hpp"

namespace lyricbeat {

/// Header names of the pronunable CSV columns. The label column is optional
/// in the file; a missing one yields empty labels.
struct PronunableColumns {
  std::string start = "start";
  std::string end = "end";
  std::string label = "label";
};

/// Parses "start=onset,end=offset,label=syllable"; unnamed keys keep their
/// defaults.
PronunableColumns parse_column_mapping(const std::string& spec);

/// One decimal timestamp per line. Blank lines and lines starting with '#'
/// are skipped. Throws ParseError with the line number.
VocalBeats read_vocal_beats(std::istream& in);
VocalBeats read_vocal_beats(const std::filesystem::path& path);

/// CSV with a header row naming at least the start and end columns.
/// Supports quoted fields. Throws ParseError with the line number.
PronunableTrack read_pronunables(std::istream& in, const PronunableColumns& columns = {});
PronunableTrack read_pronunables(const std::filesystem::path& path,
                                 const PronunableColumns& columns = {});

/// Whole file as UTF-8 text.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace lyricbeat
