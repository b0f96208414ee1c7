#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lyricbeat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed binary or text input. `offset()` is a byte offset for binary
/// input and a 1-based line number for text input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnsupportedFormatError : public Error {
 public:
  using Error::Error;
};

/// An operation was called with inputs outside its contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// No vocal event could be placed on the beat grid.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// Lyric syllable count and pronunable count disagree beyond tolerance.
class SyllableMismatchError : public Error {
 public:
  SyllableMismatchError(const std::string& what, long delta,
                        std::vector<int> expected_per_word)
      : Error(what), delta_(delta), expected_(std::move(expected_per_word)) {}

  /// pronunable count minus syllable count
  long delta() const noexcept { return delta_; }
  const std::vector<int>& expected_per_word() const noexcept { return expected_; }

 private:
  long delta_;
  std::vector<int> expected_;
};

/// A probability or similarity with a zero denominator.
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace lyricbeat
